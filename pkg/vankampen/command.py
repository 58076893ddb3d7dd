import argparse
import inspect
import typing
from typing import Any, Callable, Dict, List, Optional, Sequence

from .utils import analyze_function


class Command:
    """
    A documented function exposed as a CLI subcommand.

    Parameters without a default become positional arguments unless listed in
    `options`; the others become `--options`. `bool` options are flags and
    `List[...]` options take one or more values. Help text comes from the
    function's docstring. Parameters named in `hidden` are supplied by the
    caller of `execute`, not parsed.
    """

    def __init__(self, func: Callable, name: Optional[str] = None, description: Optional[str] = None,
                 hidden: Sequence[str] = ('settings',), options: Sequence[str] = ()):
        """
        Args:
            func (Callable): The function to run; its keyword names are the option names.
            name (Optional[str]): Subcommand name. Defaults to the function name with
                underscores replaced by dashes.
            description (Optional[str]): Overrides the docstring summary.
            options (Sequence[str]): Parameters without a default that are still
                parsed as --options, which argparse then requires.
        """
        self.func = func
        analysis = analyze_function(func)
        self.name: str = name or func.__name__.replace('_', '-')
        self.description: str = description or analysis.get('docstring') or ''
        self.hidden = frozenset(hidden)
        self.options = frozenset(options)
        self.parameters: List[Dict[str, Any]] = [p for p in analysis.get('parameters', [])
                                                 if p['name'] not in self.hidden]
        self._signature = inspect.signature(func)
        try:
            self._hints = typing.get_type_hints(func)
        except Exception:
            self._hints = {}

    @property
    def summary(self) -> str:
        return self.description.split('\n', 1)[0]

    def _kind(self, name: str):
        """(element type, is list, is flag) for one parameter."""
        hint = self._hints.get(name, str)
        origin = typing.get_origin(hint)
        args = [a for a in typing.get_args(hint) if a is not type(None)]
        if origin is typing.Union and args:
            hint = args[0]
            origin = typing.get_origin(hint)
            args = list(typing.get_args(hint))
        if origin in (list, tuple, typing.List, typing.Tuple):
            return (args[0] if args else str), True, False
        if hint is bool:
            return bool, False, True
        return (hint if hint in (int, float, str) else str), False, False

    def add_to(self, subparsers, parents: Optional[List[argparse.ArgumentParser]] = None) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.summary, description=self.description,
                                       parents=parents or [])
        for param in self.parameters:
            name = param['name']
            kind, many, flag = self._kind(name)
            help_text = param.get('description') or None
            if param.get('required') and name in self.options:
                parser.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind, required=True,
                                    nargs='+' if many else None, help=help_text)
            elif param.get('required'):
                parser.add_argument(name, type=kind, nargs='+' if many else None, help=help_text)
            elif flag:
                parser.add_argument(f"--{name.replace('_', '-')}", dest=name, action='store_true', help=help_text)
            else:
                default = self._signature.parameters[name].default
                parser.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind,
                                    nargs='+' if many else None, default=default, help=help_text)
        parser.set_defaults(command=self)
        return parser

    def execute(self, namespace: argparse.Namespace, **extra: Any) -> Any:
        """Calls the function with the parsed arguments it declares, plus `extra`."""
        kwargs = {p['name']: getattr(namespace, p['name']) for p in self.parameters
                  if hasattr(namespace, p['name'])}
        for key, value in extra.items():
            if key in self._signature.parameters:
                kwargs[key] = value
        return self.func(**kwargs)

    def __call__(self, **kwargs):
        return self.func(**kwargs)

    def __repr__(self) -> str:
        return f"Command(name='{self.name}')"
