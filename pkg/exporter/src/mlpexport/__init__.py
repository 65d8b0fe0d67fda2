"""mlpexport: train small MLP classifiers and export them for mlp2sol."""
from .data import DataError, Dataset, load_dataset, split, write_dataset
from .export import (TRAIN_NOW, ExportError, ExportJob, ExportResult, LayerSnapshot,
                     decimal_text, export_model, interchange_document, load_checkpoint,
                     snapshot_module)
from .training import (ArchitectureError, TrainingResult, build_mlp, parse_arch,
                       train_reference)

__version__ = "0.1.0"

__all__ = [
    "ArchitectureError", "DataError", "Dataset", "ExportError", "ExportJob",
    "ExportResult", "LayerSnapshot", "TRAIN_NOW", "TrainingResult", "build_mlp",
    "decimal_text", "export_model", "interchange_document", "load_checkpoint",
    "load_dataset", "parse_arch", "snapshot_module", "split", "train_reference",
    "write_dataset",
]
