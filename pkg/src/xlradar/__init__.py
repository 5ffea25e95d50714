"""Signal-level simulator and super-resolution signature estimator for
spatial-narrowband and spatial-wideband (XL array) MIMO-FMCW radar."""

from .baseline import Cluster, detect_clusters, peaks_to_signatures
from .estimate import (EstimatorConfig, MatchReport, SignatureEstimate,
                       compensate_swe, estimate_narrowband, estimate_wideband,
                       match_signatures)
from .model import (C_LIGHT, RadarParams, Scenario, Target, from_normalized,
                    to_normalized, validate)
from .scenario_io import (LoadedScenario, ScenarioError, load_scenario,
                          read_matrix_csv, write_map_csv, write_matrix_csv)
from .sparse import (Dictionary, FreqGrid, SparseSolution, build_dictionary,
                     least_squares_amplitudes, omp, refine_frequencies,
                     steering_vector)
from .spectral import (MapGrid, angle_time_map, circular_distance,
                       column_peaks, dft_axis, dirichlet, idft_axis,
                       range_angle_map, range_antenna_map, row_peaks)
from .synth import (IfMatrix, add_noise, effective_amplitude, noise_matrix,
                    sw_term, synth_exact, synth_narrowband, synth_wideband)

__all__ = [
    "C_LIGHT", "Cluster", "Dictionary", "EstimatorConfig", "FreqGrid",
    "IfMatrix", "LoadedScenario", "MapGrid", "MatchReport", "RadarParams",
    "Scenario", "ScenarioError", "SignatureEstimate", "SparseSolution",
    "Target", "add_noise",
    "angle_time_map", "build_dictionary", "circular_distance",
    "column_peaks", "compensate_swe", "detect_clusters", "dft_axis",
    "dirichlet", "effective_amplitude", "estimate_narrowband",
    "estimate_wideband", "from_normalized", "idft_axis",
    "least_squares_amplitudes", "load_scenario", "match_signatures",
    "noise_matrix", "omp", "peaks_to_signatures", "range_angle_map",
    "range_antenna_map", "read_matrix_csv", "refine_frequencies",
    "row_peaks", "steering_vector", "sw_term", "synth_exact",
    "synth_narrowband", "synth_wideband", "to_normalized", "validate",
    "write_map_csv", "write_matrix_csv",
]

__version__ = "0.1.0"
