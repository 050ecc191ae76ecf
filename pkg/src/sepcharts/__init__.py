"""Separable coordinates from maximal Abelian subalgebras of Euclidean isometry algebras.

Modules: ``algebra`` (exact Lie algebra and MASA catalogs), ``charts`` (coordinate
charts and their group actions), ``calculus`` (Laplace-Beltrami operators),
``opsets`` (exact commuting-operator checks), ``specfun`` (series special functions),
``separation`` (separated solutions) and ``cli``.
"""

from .algebra import SpaceId, get_masa, masa_catalog
from .charts import all_charts, chart_catalog, get_chart

__version__ = "0.1.0"

__all__ = ["SpaceId", "masa_catalog", "get_masa", "chart_catalog", "all_charts", "get_chart", "__version__"]
