from typing import Dict, Any

TOOL_VERSION: str = '1.0.0'  # Version echoed into every run manifest

METRICS_DB_URL: str = 'sqlite:///dgcca_metrics.db'  # Default DDBB for training metrics


class Settings:
    def __init__(self, attributes: Dict[str, Any] = None):
        self._attributes = attributes

    @property
    def attributes(self) -> Dict[str, Any]:
        return self._attributes

    def __getattr__(self, attr):
        return self._attributes.get(attr)


# [train] config keys and the settings holding their defaults
TRAIN_KEYS = {
    'r': 'R',
    'eps': 'EPS',
    'optimizer': 'OPTIMIZER',
    'learning_rate': 'LEARNING_RATE',
    'momentum': 'MOMENTUM',
    'beta_1': 'ADAM_BETA_1',
    'beta_2': 'ADAM_BETA_2',
    'adam_eps': 'ADAM_EPS',
    'l1': 'L1_PENALTY',
    'l2': 'L2_PENALTY',
    'batch_size': 'BATCH_SIZE',
    'epochs': 'EPOCHS',
    'seed': 'SEED',
    'tune_fraction': 'TUNE_FRACTION',
    'shuffle': 'SHUFFLE',
    'full_pass_every': 'FULL_PASS_EVERY',
}

# [views] and [view.<j>] config keys. Widths have no default
VIEW_KEYS = {
    'widths': None,
    'activation': 'ACTIVATION',
    'init': 'INIT',
    'weight': 'WEIGHT',
}

# Settings for the library and the command line
settings = Settings({
    # Project
    # --- bool = Enable / Disable per-batch (verbose) training logs
    'VERBOSE_LOGS': False,
    # --- Optional[str] = SQLAlchemy URL where epoch metrics are saved. None disables the metrics DDBB
    'METRICS_DB_URL': None,

    # Numerical tolerances
    # --- float = Relative tolerance to accept a matrix as symmetric
    'SYMMETRY_TOLERANCE': 1e-10,
    # --- float = Relative tolerance (w.r.t. the spectral norm) for negative eigenvalues of a PSD matrix
    'PSD_TOLERANCE': 1e-8,
    # --- float = Relative threshold under which a shifted eigenvalue is considered singular
    'SINGULAR_TOLERANCE': 1e-13,
    # --- float = Minimum lambda_r - lambda_(r+1) for the GCCA objective to be differentiable
    'EIGENGAP_TOLERANCE': 1e-6,

    # Training defaults (overridden by the [train] section of a config file)
    # --- int = Dimensionality of the shared representation G
    'R': 2,
    # --- float = Additive ridge on every view covariance C_jj
    'EPS': 1e-8,
    # --- str = Update rule. Options: ['sgd', 'sgd_momentum', 'adam']
    'OPTIMIZER': 'adam',
    # --- float = Step size
    'LEARNING_RATE': 1e-3,
    # --- float = Momentum constant for 'sgd_momentum'
    'MOMENTUM': 0.9,
    # --- float = Adam decay rate for the first moment
    'ADAM_BETA_1': 0.9,
    # --- float = Adam decay rate for the second moment
    'ADAM_BETA_2': 0.999,
    # --- float = Adam denominator constant
    'ADAM_EPS': 1e-8,
    # --- float = L1 penalty on every weight matrix
    'L1_PENALTY': 0.0,
    # --- float = L2 penalty on every weight matrix
    'L2_PENALTY': 0.0,
    # --- int = Minibatch size
    'BATCH_SIZE': 2000,
    # --- int = Number of passes over the training data
    'EPOCHS': 200,
    # --- int = Seed for initialization, shuffling and splits
    'SEED': 8795,
    # --- float = Fraction of the data held out to track the tuning reconstruction error
    'TUNE_FRACTION': 0.1,
    # --- bool = Shuffle the training samples at every epoch
    'SHUFFLE': True,
    # --- int = Recompute the exact training error with a full pass every k epochs (0 = never)
    'FULL_PASS_EVERY': 0,
    # --- int = The last batch of an epoch is dropped if it has fewer samples than max(r + 1, this)
    'MIN_BATCH_REMAINDER': 16,

    # View defaults (overridden by the [views] and [view.<j>] sections of a config file)
    # --- str = Hidden activation. Options: ['sigmoid', 'relu', 'tanh', 'identity']
    'ACTIVATION': 'sigmoid',
    # --- str = Weight initialization. Options: ['glorot_uniform', 'identity']
    'INIT': 'glorot_uniform',
    # --- float = WGCCA weight of a view
    'WEIGHT': 1.0,

    # Synthetic data
    # --- int = Samples drawn per mixture component
    'SYNTH_N_PER_COMPONENT': 200,
    # --- int = Minimum samples per mixture component
    'SYNTH_MIN_PER_COMPONENT': 50,
    # --- float = Std of the isotropic Gaussian noise added to every view
    'SYNTH_NOISE': 0.05,

    # Evaluation
    # --- int = Default number of neighbors for KNN classification
    'KNN_K': 4,
    # --- float = Default ridge constant of the linear probe
    'PROBE_RIDGE': 1e-3,

    # Gradient check
    # --- float = Finite-difference step
    'GRADCHECK_STEP': 1e-5,
    # --- float = Maximum accepted relative error between analytic and numeric gradients
    'GRADCHECK_TOLERANCE': 1e-4,
    # --- float = Entries whose gradient magnitude is below this are not compared
    'GRADCHECK_MIN_MAGNITUDE': 1e-6,

    # Model screening
    # --- float = Runs whose final tuning reconstruction error exceeds this are weeded out
    'SCREEN_MAX_TUNE_ERROR': 1e3,
})
