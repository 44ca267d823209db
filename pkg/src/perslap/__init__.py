"""Persistent Laplacians of filtered simplicial complexes.

The pipeline: build a complex, filter it, extract persistent Laplacians,
summarize their spectra into diagrams and images, and certify the
advertised stability bounds numerically.
"""

from .complex import (SimplicialComplex, build_complex, boundary_matrix,
                      faces, facets)
from .filtration import (Filtration, sublevel_filtration, degree_filtration,
                         vietoris_rips, complex_at)
from .spectral import (sym_eigen, pseudo_inverse, schur_complement,
                       column_reduce, EigenDecomposition)
from .plaplacian import (combinatorial_laplacian, up_persistent_laplacian,
                         schur_up_persistent_laplacian, persistent_laplacian,
                         PersistentLaplacian)
from .persistence import (PersistenceDiagram, persistent_betti,
                          persistence_diagram, wasserstein, bottleneck,
                          diagram_to_csv, diagrams_from_csv)
from .signatures import (SignatureSpec, PLDiagram, s_gap, s_ent, s_geo,
                         apply_signature, build_pld, pld_wasserstein,
                         geo_sweep, pld_to_csv, pld_from_csv)
from .imaging import (ImagingConfig, PixelImage, pl_surface, pl_image,
                      persistence_surface, persistence_image, fit_grid,
                      image_to_csv, image_from_csv, image_to_pgm)
from .stability import (BoundReport, perturb_diagram, perturb_pld,
                        check_pdpld, check_surface_bound, check_image_bounds,
                        check_gauss_bounds, check_plipd, run_suite)
from .cli import main

__version__ = "1.0.0"

__all__ = [
    "SimplicialComplex", "build_complex", "boundary_matrix", "faces",
    "facets",
    "Filtration", "sublevel_filtration", "degree_filtration",
    "vietoris_rips", "complex_at",
    "sym_eigen", "pseudo_inverse", "schur_complement", "column_reduce",
    "EigenDecomposition",
    "combinatorial_laplacian", "up_persistent_laplacian",
    "schur_up_persistent_laplacian", "persistent_laplacian",
    "PersistentLaplacian",
    "PersistenceDiagram", "persistent_betti", "persistence_diagram",
    "wasserstein", "bottleneck", "diagram_to_csv", "diagrams_from_csv",
    "SignatureSpec", "PLDiagram", "s_gap", "s_ent", "s_geo",
    "apply_signature", "build_pld", "pld_wasserstein", "geo_sweep",
    "pld_to_csv", "pld_from_csv",
    "ImagingConfig", "PixelImage", "pl_surface", "pl_image",
    "persistence_surface", "persistence_image", "fit_grid", "image_to_csv",
    "image_from_csv", "image_to_pgm",
    "BoundReport", "perturb_diagram", "perturb_pld", "check_pdpld",
    "check_surface_bound", "check_image_bounds", "check_gauss_bounds",
    "check_plipd", "run_suite",
    "main",
]
