"""Convergence-rate analysis of best-constant average consensus on
asymmetric regular networks (rings, r-nearest rings, tori).

The public surface mirrors the pipeline: build a model (topology),
take its spectrum (spectral), solve the best-constant design (design),
simulate and verify it (simulate), and sweep parameter grids
(analysis).
"""

from .analysis import (
    FigureDataset,
    SweepRow,
    absolute_error_curve,
    figure_dataset,
    rows_to_csv,
    rows_to_jsonl,
    sweep,
    write_figure,
)
from .design import (
    ConsensusDesign,
    DesignMethod,
    ReconciledRate,
    ReconciliationTag,
    closed_design,
    closed_form_R,
    closed_form_h,
    design_export_dict,
    design_pipeline,
    minimax_h,
    solve_h_pair,
)
from .errors import (
    ConsensusSpectraError,
    DegenerateError,
    DivergenceError,
    InsufficientDataError,
    ParameterError,
    SizeError,
    TopologyError,
    UnsupportedParityError,
)
from .simulate import (
    SimulationTrace,
    TrialResult,
    empirical_contraction,
    report_to_json,
    run_consensus,
    splitmix64,
    trace_to_csv,
    uniform_vector,
    verify_consensus,
)
from .spectral import (
    ComplexEigenvalue,
    ExtremalPair,
    Spectrum,
    SpectrumSource,
    circulant_spectrum,
    closed_eigenvalue,
    closed_values,
    extremal_pair,
    full_spectrum,
    spectrum_to_csv,
    spectrum_to_json,
)
from .topology import (
    DEFAULT_DENSE_CAP,
    CirculantRow,
    DenseLaplacian,
    Kind,
    NetworkModel,
    circulant_row,
    dense_laplacian,
    format_model,
    parse_model,
    r_nearest_ring,
    ring,
    torus,
    validate,
)

__version__ = "0.1.0"
