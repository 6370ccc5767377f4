"""Recover offshore buoy wave fields from tsunami shoreline run-up records.

Core pipeline: run-up -> shoreline hodograph signal -> Laplace-domain
recovery of the buoy boundary data -> spectral field reconstruction ->
physical displacement and velocity at the buoy.  Flat-region stitching
(Boussinesq two-soliton or linear-SWE travelling wave) back-tracks the
recovered wave to the tsunamigenic event.
"""

from .bessel import bessel_j, bessel_j0_roots
from .errors import (BreakingAtShoreError, CompatibilityError, DomainTooSmallError,
                     InputError, LaplaceInversionError, NumericalDiagnosticError,
                     RunupInvError, StageError)
from .fitting import least_squares
from .hodograph import (Bathymetry, HodographField, HodographState, PhysicalState,
                        breaking_diagnostic, cgt_forward, cgt_inverse,
                        dimensionalize_boussinesq, dimensionalize_nswe,
                        inverse_cgt_on_gamma, shore_from_hodograph,
                        shore_to_hodograph)
from .csvio import (read_series_csv, write_plot_manifest, write_series_csv,
                    write_summary)
from .inversion import (InversionParams, PipelineResult, inversion_multiplier,
                        invert_runup, recover_phi_b, recover_psi_b,
                        velocity_multiplier)
from .laplace import (inverse_laplace_ifft, laplace_forward,
                      laplace_forward_bromwich)
from .scenarios import (ScenarioConfig, load_scenario_config, run_benchmark,
                        run_scenario)
from .modes import (ModeSet, build_modes, duhamel_coefficients, reconstruct_field,
                    shoreline_equation, shoreline_velocity)
from .oracle import (InitialProfile, STANDARD_PROFILES, buoy_physical_record,
                     fd_solve_ibvp, semi_infinite_ivp)
from .series import ComplexSamples, FitResult, TimeSeries, relative_l2
from .signalops import convolve_causal
from .solitons import (SolitonPair, TravellingWaveSpec, backtrack_solitons,
                       boussinesq_boundary, boussinesq_initial_condition,
                       compare_models, crop, fit_travelling_wave,
                       fit_two_soliton, lswe_backtrack, lswe_boundary,
                       two_soliton_eta)

__version__ = "0.1.0"
