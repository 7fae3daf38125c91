"""
Model, optimizer and training defaults
Full-size dimensions, reduced presets and hyperparameter defaults
"""

# ============================================
# DIMENSIONES DEL MODELO (tamaño completo)
# ============================================
LINK_DIM = 512
PLACE_DIM = 2048
ENCODER_HIDDEN = 4096
MLP_WIDTHS = (1024, 512, 128, 32, 1)
ROUNDS_LINK = 1
ROUNDS_PLACE = 1
AGE_SLOTS = 100
LEAKY_SLOPE = 0.01

# ============================================
# PRESETS REDUCIDOS
# ============================================
# Formato: nombre: (link_dim, place_dim, encoder_hidden, mlp_widths)
PRESETS = {
    "full": (LINK_DIM, PLACE_DIM, ENCODER_HIDDEN, MLP_WIDTHS),
    "reduced": (32, 64, 128, (128, 64, 32, 16, 1)),
    "gradcheck": (4, 8, 8, (8, 8, 8, 8, 1)),
}

# ============================================
# OPTIMIZADOR (AMSGrad con weight decay desacoplado)
# ============================================
LEARNING_RATE = 1e-3
BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8
WEIGHT_DECAY = 1e-5
LR_DECAY = 1.0              # factor multiplicativo por época (1.0 = tasa constante)

# ============================================
# ENTRENAMIENTO
# ============================================
BATCH_SIZE = 256
EPOCHS_ML100K = 75
EPOCHS_ML1M = 30
FINE_TUNE_EPOCHS = 5
TEMPORAL_TRAIN_FRACTION = 0.8
DEFAULT_SEED = 0

# ============================================
# CHECKPOINTS
# ============================================
CHECKPOINT_MAGIC = "HBGNN-CHECKPOINT"
CHECKPOINT_FORMAT_VERSION = 1
