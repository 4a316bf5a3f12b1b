"""Exact symbolic computations for the Weyl vertex algebra (the beta-gamma system)."""
from .errors import (
    ConfigError,
    DegenerateContractionError,
    GradingError,
    InvalidParameterError,
    ParseError,
    VerificationError,
    WeylZhuError,
    WindowOverflowError,
)
from .fock_module import (
    FockVector,
    PBWMonomial,
    Bipartition,
    character_series,
    enumerate_bipartitions,
    graded_dimension,
    vertex_modes,
    zhu_circ,
    zhu_star,
)
from .mode_algebra import (
    Generator,
    Kind,
    ModeElement,
    ModeWord,
    WeylElement,
    dixmier_phi,
    multiply,
    normal_order,
    parse_element,
    spectral_flow,
    weyl_project,
)
from .mta_zhu import contraction_constant, star, unity, zhu_structure
from .weight_modules import (
    Family,
    WeightModuleSpec,
    delta_operator,
    induce,
    spectral_flow_module,
    weakly_interlocked,
)

__version__ = "0.1.0"
