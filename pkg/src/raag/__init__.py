"""Right-angled Artin groups: normal forms, cyclic structure and quasi-roots.

Convention: in the group built from a graph, two distinct vertices commute
exactly when they are *not* joined by an edge.
"""

from .graph import *  # noqa: F401,F403
from .normalform import *  # noqa: F401,F403
from .quasiroot import *  # noqa: F401,F403
from .seqwords import *  # noqa: F401,F403
from .structure import *  # noqa: F401,F403
from .words import *  # noqa: F401,F403

from . import graph, normalform, quasiroot, seqwords, structure, words

__all__ = graph.__all__ + words.__all__ + normalform.__all__ + structure.__all__ + seqwords.__all__ + quasiroot.__all__
