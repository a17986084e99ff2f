"""Filter banks over countable discrete abelian groups.

Thin re-export of the compiled extension. The JSON helpers speak the same
document formats as the ``gfb`` command-line tool.
"""

from ._core import (
    BankOutput,
    DualPoint,
    DualReport,
    Error,
    FilterBank,
    FrameReport,
    Group,
    InvalidArgumentError,
    Lattice,
    MathError,
    SchemaError,
    Signal,
    Spectrum,
    Transversal,
    __version__,
    alias_identity_residual,
    apply_filter_bank,
    canonical_dual,
    character,
    check_dual_frames,
    check_mod_polyphase_relation,
    check_perfect_reconstruction,
    convolve,
    distance,
    downsample,
    dumps_bank,
    dumps_frame_report,
    dumps_signal,
    expand,
    fourier,
    frame_bounds,
    frame_operator_oracle,
    inner,
    inverse_fourier,
    involution,
    is_riesz_basis,
    is_tight,
    loads_bank,
    loads_signal,
    m_fourier_at,
    pr_counterexample,
    pr_residual,
    quincunx_lambda,
    translate,
    w_orthogonality_residual,
)

__all__ = [
    "BankOutput",
    "DualPoint",
    "DualReport",
    "Error",
    "FilterBank",
    "FrameReport",
    "Group",
    "InvalidArgumentError",
    "Lattice",
    "MathError",
    "SchemaError",
    "Signal",
    "Spectrum",
    "Transversal",
    "__version__",
    "alias_identity_residual",
    "apply_filter_bank",
    "canonical_dual",
    "character",
    "check_dual_frames",
    "check_mod_polyphase_relation",
    "check_perfect_reconstruction",
    "convolve",
    "distance",
    "downsample",
    "dumps_bank",
    "dumps_frame_report",
    "dumps_signal",
    "expand",
    "fourier",
    "frame_bounds",
    "frame_operator_oracle",
    "inner",
    "inverse_fourier",
    "involution",
    "is_riesz_basis",
    "is_tight",
    "loads_bank",
    "loads_signal",
    "m_fourier_at",
    "pr_counterexample",
    "pr_residual",
    "quincunx_lambda",
    "translate",
    "w_orthogonality_residual",
]
