# Renderers module initialization
from renderers.base_renderer import BaseRenderer, Document
from renderers.csv_renderer import CsvRenderer
from renderers.json_renderer import JsonRenderer
from renderers.text_renderer import TextRenderer

RENDERERS = {renderer.format_name: renderer for renderer in (JsonRenderer, CsvRenderer, TextRenderer)}
