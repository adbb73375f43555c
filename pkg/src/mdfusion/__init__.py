"""Multi-resolution data fusion.

Fuses a full-field low-resolution (or sparsely sampled) acquisition with a
small high-resolution patch library, using Plug-and-Play ADMM with a
library-based non-local means denoiser as the prior.
"""

from .baselines import bicubic_interpolate, shepard_interpolate
from .denoise import DenoiserConfig, internal_nlm_denoise, lbnlm_denoise, lbnlm_weights
from .estimators import (BaselineReconstructor, IdentityDenoiser, InternalNLM, LibraryNLM,
                         PnPReconstructor)
from .forward import InversionProblem, sparse_inversion, sr_inversion
from .imagecore import (MeasurementSet, SamplingMask, SparseSample, SuperResolution,
                        block_downsample, replicate_upsample, sample_sparse)
from .imageio import load_image, load_mask, save_image, save_mask
from .metrics import acquisition_stats, rmse_percent
from .patchlib import PatchLibrary, build_library, extract_patch, load_library, save_library
from .pnp import (PnPConfig, ReconstructionReport, estimate_sigma_lambda, normalized_residual,
                  pnp_reconstruct)
from .synthbench import Region, SparseMode, gen_experiment, gen_lattice_scene, gen_texture_scene

__version__ = "0.1.0"
