"""Edge-isoperimetric minimizers on the square and cubic lattices.

Library layout:

- ``lattice``: configurations on Z^2/Z^3, bonds, perimeters, boxes,
  vacancies, symmetric differences, file format
- ``planar``: exact 2D theory (closed formulas, daisies, the
  rectangle-plus-line family, the sharpness sequence)
- ``cuboidify``: bond-preserving rearrangement into quasicubes and the
  side-face merge
- ``wulff``: Wulff shapes, the fluctuation metric, side deviations
- ``lowerbound``: the explicit family attaining the n^(3/4) fluctuation
  law, with bond-checked transformations
- ``oracle``: exhaustive enumeration ground truth for small sizes
- ``reports`` / ``cli``: sweeps, CSV and figure output, verification
"""

__version__ = "0.1.0"
