"""Published counts of fixed polyominoes / polycubes (up to translation),
used as independent cross-checks of the enumerator."""

FIXED_POLYOMINOES = {1: 1, 2: 2, 3: 6, 4: 19, 5: 63, 6: 216, 7: 760, 8: 2725}
FIXED_POLYCUBES = {1: 1, 2: 3, 3: 15, 4: 86, 5: 534, 6: 3481, 7: 23502, 8: 162913}
