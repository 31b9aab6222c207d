"""Library layer: bitmaps, ranked automata, cover search, operations and bounds."""
