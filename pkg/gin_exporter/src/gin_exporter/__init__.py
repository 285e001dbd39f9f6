"""gin_exporter: train GIN graph classifiers, export encoder embeddings,
and convert pickled citation datasets to the flat node-task layout."""

__version__ = "0.1.0"

from .data import DatasetError, GraphArrays, load_graphs, train_test_split
from .model import GinClassifier, GinEncoder, GinLayer, MlpDecoder
from .planetoid import PlanetoidError, convert_planetoid, load_planetoid
from .train import (TrainResult, TrainSpec, TrainingDiverged, train_and_export,
                    train_gin, write_embeddings_csv)
