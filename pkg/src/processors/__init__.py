"""
processors - Ingesta de MovieLens: formatos nativos, vocabularios, particiones y lotes
"""

from src.processors.vocabulary import Vocabulary, Vocabularies, build_vocabs
from src.processors.dataset import Dataset, FeatureBatch, RatingExample, age_index, canonical_genres, encode
from src.processors.movielens_loader import load_ml100k, load_ml1m, write_ml100k, write_ml1m
from src.processors.splits import Split, fold_split, subsample, temporal_split
from src.processors.data_loader import clear_data_cache, load_dataset

__all__ = [
    'Vocabulary', 'Vocabularies', 'build_vocabs',
    'Dataset', 'FeatureBatch', 'RatingExample', 'age_index', 'canonical_genres', 'encode',
    'load_ml100k', 'load_ml1m', 'write_ml100k', 'write_ml1m',
    'Split', 'fold_split', 'subsample', 'temporal_split',
    'clear_data_cache', 'load_dataset',
]
