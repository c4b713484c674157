"""elastoscat: 2D elastic scattering by rigid obstacles.

Forward boundary-integral solver for the Navier equation and shape
reconstruction from far-field data by counting eigenvalues of the probe
operator Re(F) + H_B* H_B over a sweep of test disks.
"""

from .elastic import ElasticMedium, PlaneWaveSpec, make_medium
from .forward import (DirectionSet, FarFieldOperatorMatrix, add_noise,
                      assemble_data_to_pattern, assemble_farfield_operator,
                      direction_set, read_ffd, write_ffd)
from .probe import (EigenCount, TestDisk, count_above, hermitian_eigenvalues,
                    probe_operator, test_disk, weighted_space)
from .reconstruct import (IndicatorGrid, RunConfig, calibrate, load_config,
                          parse_config, sweep, write_indicator_csv,
                          write_indicator_pgm)

__all__ = [
    "ElasticMedium", "PlaneWaveSpec", "make_medium",
    "DirectionSet", "FarFieldOperatorMatrix", "add_noise",
    "assemble_data_to_pattern", "assemble_farfield_operator", "direction_set",
    "read_ffd", "write_ffd",
    "EigenCount", "TestDisk", "count_above", "hermitian_eigenvalues",
    "probe_operator", "test_disk", "weighted_space",
    "IndicatorGrid", "RunConfig", "calibrate", "load_config", "parse_config",
    "sweep", "write_indicator_csv", "write_indicator_pgm",
]

__version__ = "0.1.0"
