"""twistlab: exact deciders and numerical probes for twisted group algebras
over concrete group families.

Subpackages by theme: exact circle-group arithmetic (phase), group normal
forms and balls (groups), cocycle constructors (cocycles), regularity
deciders (regularity), the verdict/classification rules (verdicts),
truncated-operator numerics (spectral), and growth/decay probes (growth).
"""

from ._kernels import IMPL as kernel_impl

__version__ = "0.1.0"
__all__ = ["kernel_impl", "__version__"]
