"""Convolutional time-domain passive acoustic mapping toolkit."""

from .errors import ConfigurationError, ConvPamError, ModelError, NumericalError
from .geometry import (
    AcquisitionConfig,
    DelayTable,
    ImageGrid,
    PitchMatchResult,
    SensorArray,
    build_delay_table,
    central_sensor_index,
    contributor_set,
    linear_array,
    validate_pitch_matching,
)
from .forward import (
    CavitationCube,
    ConvKernel,
    ConvOperator,
    MatrixFreeOperator,
    RfData,
    adjoint_conv,
    adjoint_conv_fft,
    adjoint_matrix_free,
    build_kernel,
    extract,
    forward_conv,
    forward_conv_fft,
    forward_matrix_free,
    operator_pair,
)

__version__ = "0.1.0"
