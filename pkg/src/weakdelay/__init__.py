"""Weak-measurement estimation of slow-light differential group delay.

A weak Gaussian probe propagates through a coherently driven four-level
vapor; its circular components acquire different group delays, and a nearly
orthogonal polarization post-selection amplifies the tiny delay into a large
mean-arrival-time shift.
"""

from .config import (AtomicConfig, GridConfig, OutputConfig, PostSelection,
                     ProbeConfig, RunConfig, SweepConfig, load_config, preset)
from .atomic import (ProbeCoherences, SusceptibilityCurve, ZerothOrderState,
                     analytic_dgd, dipole_prefactors, group_indices,
                     group_velocities, probe_coherences, susceptibility_curve,
                     zeroth_order)
from .pulse import (FieldEnvelope, frequency_grid, gaussian_spectrum,
                    input_envelope, measured_dgd, peak_time, propagate)
from .measurement import (amplitude_ratio, infer_dgd, intensity_terms,
                          mean_arrival, output_intensity, pointer_shift,
                          postselect, postselect_mirror, weak_value,
                          weak_value_absorptive)
from .estimation import (DensityEstimate, absorption_coefficient,
                         absorption_error, delay_per_density,
                         estimate_density)
from .pipeline import (MeasurementReport, SweepRow, calibrate,
                       measured_dgd_at, run_point, run_sweep)
from .errors import (AliasingError, BoundaryPeakError, ConfigError,
                     DegenerateConfigError, GridMismatchError,
                     GridTooCoarseError, NoSolutionError,
                     SingularDenominatorError, VanishingIntensityError,
                     WeakDelayError, ZeroKappaError)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
