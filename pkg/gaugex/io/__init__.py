"""
File formats: YAML configuration, s-expression structures and plain-text
matrices.
"""

from gaugex.io.matrix_file import dump_rows, load_rows, parse_rows, save_rows
from gaugex.io.structure_file import (
    dump_structure,
    load_signature,
    load_structure,
    parse_structure,
    save_structure,
)
from gaugex.io.yaml_loader import deep_merge, dump_config, load_config, load_defaults, load_merged

__all__ = [
    "load_config", "dump_config", "deep_merge", "load_defaults", "load_merged",
    "parse_structure", "load_structure", "load_signature", "dump_structure", "save_structure",
    "parse_rows", "load_rows", "dump_rows", "save_rows",
]
