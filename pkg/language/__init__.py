"""Language oracles, automata, enumeration and counting."""
