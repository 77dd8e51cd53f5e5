"""Numerical toolkit for static warped-product spacetimes.

Profiles h(r) with exact derivatives, null-energy-condition diagnostics,
spacelike warped-product graphs (hyperboloids, constant-trace families),
generalized double-null horizon extensions, photon-surface eigenvalue gaps,
and a finite-difference curvature oracle that cross-checks every closed form.
"""

from .curvature import (
    SliceCurvature,
    SpacetimeCurvature,
    hessian_identity_check,
    kruskal_ricci,
    slice_curvature,
    spacetime_curvature,
)
from .fibre import Fibre, make_einstein, make_from_eigenvalues, make_sphere
from .graphs import (
    CMCGraph,
    CustomBT,
    GraphSlice,
    Hyperboloid,
    LeafGeometry,
    TimeSymmetric,
    bt_coefficient,
    c0_threshold,
    energy_density,
    extrinsic_invariants,
    graph_data,
    height_function,
    leaf_geometry,
    momentum_residual,
)
from .kruskal import (
    GraphExtension,
    KruskalChart,
    build_chart,
    extend_graph,
    from_kruskal,
    to_kruskal,
)
from .nec import (
    NecReport,
    h4_boundary_check,
    monotone_quantity,
    monotonicity_identity_residual,
    nec_check,
    odi_residual,
    odi_residual_power_sum,
)
from .photon import (
    GapScan,
    IsotropicChart,
    conformal_family,
    eigenvalue_gap,
    gap_zero_scan,
    isotropic_from_areal,
    timelike_photon_relations,
)
from .profiles import (
    PowerSum,
    Profile,
    ZeroStructure,
    custom,
    eval,
    find_zeros,
    minkowski_like,
    quadratic_conformal,
    reissner_nordstrom,
    schwarzschild,
    schwarzschild_anti_de_sitter,
    schwarzschild_de_sitter,
    surface_gravity_constants,
)

__version__ = "0.1.0"
