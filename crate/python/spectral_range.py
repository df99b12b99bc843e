"""Thin wrapper re-exporting the native extension module.

Build the extension and drop it next to this file (see the README):

    cargo build -p spectral-range-py --release
    cp target/release/lib_spectral_range.so python/_spectral_range.so
"""

from _spectral_range import (  # noqa: F401
    ComplexMatrix,
    NonnegMatrix,
    RowUniformMatrix,
    aevdd_scalings,
    camion_hoffman_decide,
    close_polygon,
    critical_graph,
    cycle_means,
    eta_describe,
    eta_realize,
    extremal_params,
    m_matrix_check,
    perron_root,
    perron_vector,
    realize_eigenvalue,
    sigma_describe,
    simple_sunflower,
    strict_antivisualizing_vector,
    strict_visualizing_vector,
    sum_visualize,
    zero_in_sigma,
)
