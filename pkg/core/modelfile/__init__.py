from core.modelfile.loader import ModelFile, load_model, parse_model
from core.modelfile.printer import format_form, format_model

__all__ = ['ModelFile', 'format_form', 'format_model', 'load_model', 'parse_model']
