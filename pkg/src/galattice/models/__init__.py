"""Charts of flat R-models, normalization and the twisted tame sheaf."""

from .chart import Chart, ChartDiagnostics, PreconditionError, jacobian_minors, verify_chart
from .normalize import NormalizationData, NormalizationError, normalize, verify_normalization
from .gasheaf import GaSectionModule, MembershipCertificate, fiber_radical, ga_membership, ga_sections
from .places import PlaceWitness, place_witness_search, series_roots
