"""
Mappings for the MovieLens distributions
Canonical genre list, ML-1M code tables, file layouts and published counts
"""

# ============================================
# GÉNEROS CANÓNICOS (orden de las columnas binarias de u.item)
# ============================================
CANONICAL_GENRES = (
    "unknown",
    "Action",
    "Adventure",
    "Animation",
    "Children's",
    "Comedy",
    "Crime",
    "Documentary",
    "Drama",
    "Fantasy",
    "Film-Noir",
    "Horror",
    "Musical",
    "Mystery",
    "Romance",
    "Sci-Fi",
    "Thriller",
    "War",
    "Western",
)
UNKNOWN_GENRE = "unknown"

# ============================================
# ML-1M: CÓDIGOS DE OCUPACIÓN (README de la distribución)
# ============================================
# Se conservan como tokens de dos dígitos ("00".."20") para que el
# vocabulario ordenado coincida con el orden de los códigos.
ML1M_OCCUPATIONS = {
    0: "other or not specified",
    1: "academic/educator",
    2: "artist",
    3: "clerical/admin",
    4: "college/grad student",
    5: "customer service",
    6: "doctor/health care",
    7: "executive/managerial",
    8: "farmer",
    9: "homemaker",
    10: "K-12 student",
    11: "lawyer",
    12: "programmer",
    13: "retired",
    14: "sales/marketing",
    15: "scientist",
    16: "self-employed",
    17: "technician/engineer",
    18: "tradesman/craftsman",
    19: "unemployed",
    20: "writer",
}

# ============================================
# ML-1M: CÓDIGOS DE EDAD -> LÍMITE INFERIOR DEL RANGO
# ============================================
# "Under 18" se publica con el código 1; los demás códigos ya son el
# límite inferior de su rango.
ML1M_AGE_CODES = {
    1: 1,     # Under 18
    18: 18,   # 18-24
    25: 25,   # 25-34
    35: 35,   # 35-44
    45: 45,   # 45-49
    50: 50,   # 50-55
    56: 56,   # 56+
}

# ============================================
# FORMATOS DE ARCHIVO
# ============================================
ML100K_FILES = {
    "ratings": "u.data",
    "users": "u.user",
    "items": "u.item",
}
ML100K_FOLD_TEMPLATE = ("u{fold}.base", "u{fold}.test")
ML100K_ENCODING = "latin-1"

ML1M_FILES = {
    "ratings": "ratings.dat",
    "users": "users.dat",
    "items": "movies.dat",
}
ML1M_SEPARATOR = "::"
ML1M_ENCODING = "latin-1"

# ============================================
# CONTEOS PUBLICADOS (usuarios, películas, ratings)
# ============================================
PUBLISHED_COUNTS = {
    "ml100k": (943, 1682, 100000),
    "ml1m": (6040, 3883, 1000209),
}
