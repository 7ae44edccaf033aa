from .render import FigureSpec, RenderError, dump_points, load_table, render

__all__ = ["FigureSpec", "RenderError", "dump_points", "load_table", "render"]
