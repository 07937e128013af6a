"""Exact verification of the dual -1 Hahn algebra in its commutant and
osp(1|2) Clebsch-Gordan presentations, and the Howe duality linking them."""

__version__ = "0.1.0"
