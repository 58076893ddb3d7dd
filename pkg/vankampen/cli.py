"""
The `vankampen` command line.

    vankampen pi1 klein.cx2 --base v0 --group
    vankampen pi1-cover circle3.cx2 --json
    vankampen pi2 sphere2.cx2 --support 3 --coeff 3
    vankampen check-triple annulus.cx2 --sub outer --base v0

Complex files are looked up in the shipped data directory when the path does
not exist. Crossed-module arguments are YAML or JSON files, or catalog names.
"""
from dataclasses import dataclass, field
from typing      import Any, Dict, List, Optional, Sequence
import argparse
import json
import logging
import os
import sys

from rich.console import Console
from rich.logging import RichHandler

from .            import __version__
from .command     import Command
from .complex     import (ParsedComplex, check_connected_triple, load_complex, pi1_complex, pi1_via_cover,
                          xmod_of_complex)
from .config      import Settings, settings as default_settings
from .double      import check_laws, lambda_squares
from .equivalence import roundtrip_dg, roundtrip_xmod
from .errors      import PreconditionError, VanKampenError
from .fox         import boundary_matrix, kernel_basis_candidate, pi2_kernel_search, vector_to_dict
from .groupoid    import to_dot, vertex_group
from .utils       import data_path, render
from .xmod        import load_xmod, validate_xmod

logger = logging.getLogger(__name__)

console = Console()
err_console = Console(stderr=True)


@dataclass
class Output:
    """What a command prints: text by default, `data` under --json, `dot` under --dot."""
    text: str
    data: Dict[str, Any] = field(default_factory=dict)
    dot: Optional[str] = None


def _complex(file: str) -> ParsedComplex:
    if not os.path.exists(file) and os.path.exists(data_path(file)):
        file = data_path(file)
    if not os.path.exists(file):
        raise PreconditionError(f"No such complex file: {file}", file)
    return load_complex(file)


def _base(parsed: ParsedComplex, base: Optional[List[str]]) -> List[str]:
    """The requested base points, else those of the file, else the least vertex of each component."""
    if base:
        return list(base)
    if parsed.base:
        return list(parsed.base)
    return [min(c) for c in parsed.complex.components()]


def _report(report) -> str:
    return render('report.j2', **report.to_dict())


# ----- commands -----

def pi1(file: str, base: Optional[List[str]] = None, group: bool = False,
        settings: Optional[Settings] = None) -> Output:
    """
    Presents the fundamental groupoid of a complex on a set of base points.

    Args:
        file (str): A .cx2 complex file.
        base (Optional[List[str]]): Base points; defaults to the file's `base` line.
        group (bool): Print the vertex group at the first base point instead.
    """
    parsed = _complex(file)
    C = _base(parsed, base)
    P = pi1_complex(parsed.complex, C)
    if group:
        G = vertex_group(P, C[0])
        return Output(str(G), G.to_dict(), to_dot(P, parsed.complex.name))
    return Output(str(P), P.to_dict(), to_dot(P, parsed.complex.name))


def pi1_cover(file: str, base: Optional[List[str]] = None, settings: Optional[Settings] = None) -> Output:
    """
    Computes the fundamental groupoid as a coequaliser over the file's
    subcomplex cover and compares it with the direct computation.

    Args:
        file (str): A .cx2 complex file with `sub` lines covering it.
        base (Optional[List[str]]): Base points; defaults to the file's `base` line.
    """
    parsed = _complex(file)
    P, report = pi1_via_cover(parsed.complex, parsed.cover, _base(parsed, base), settings)
    text = f"{P}\n{render('comparison.j2', **report.to_dict())}"
    return Output(text, {"presentation": P.to_dict(), "comparison": report.to_dict()}, to_dot(P, parsed.complex.name))


def xmod(file: str, base: Optional[List[str]] = None, settings: Optional[Settings] = None) -> Output:
    """
    Describes the free crossed module of the 2-cells over the free group of
    the 1-skeleton.

    Args:
        file (str): A connected .cx2 complex file.
        base (Optional[List[str]]): Base points; the least one is used.
    """
    parsed = _complex(file)
    F = xmod_of_complex(parsed.complex, _base(parsed, base), settings)
    lines = [f"{F.name} -> {F.P.name or 'P'} = ⟨{', '.join(F.P.generators)}⟩"]
    lines.extend(f"  ∂{r} = {F.w[r]}" for r in F.relators)
    data = {"name": F.name, "generators": list(F.P.generators),
            "boundary": {r: str(F.w[r]) for r in F.relators}}
    return Output('\n'.join(lines), data)


def fox(file: str, base: Optional[List[str]] = None, settings: Optional[Settings] = None) -> Output:
    """
    Prints the Fox matrix of the 2-cells of a connected complex over the
    group ring of its fundamental group.

    Args:
        file (str): A connected .cx2 complex file.
        base (Optional[List[str]]): Base points; the least one is used.
    """
    parsed = _complex(file)
    F = xmod_of_complex(parsed.complex, _base(parsed, base), settings)
    Mx = boundary_matrix(F.quotient, F.relators, settings)
    return Output(str(Mx), Mx.to_dict())


def pi2(file: str, base: Optional[List[str]] = None, support: int = 3, coeff: int = 3,
        radius: Optional[int] = None, settings: Optional[Settings] = None) -> Output:
    """
    Searches the kernel of the Fox matrix of a connected complex, a bounded
    picture of its second homotopy module.

    Args:
        file (str): A connected .cx2 complex file.
        base (Optional[List[str]]): Base points; the least one is used.
        support (int): Most group elements per coordinate.
        coeff (int): Largest absolute coefficient.
        radius (Optional[int]): Longest normal form used; defaults to the configured radius.
    """
    parsed = _complex(file)
    F = xmod_of_complex(parsed.complex, _base(parsed, base), settings)
    Mx = boundary_matrix(F.quotient, F.relators, settings)
    vectors = pi2_kernel_search(Mx, support, coeff, radius, settings)
    basis = kernel_basis_candidate(vectors)
    if not vectors:
        text = "no kernel vectors within bounds"
    elif basis is None:
        text = f"{len(vectors)} kernel vectors; no single basis candidate"
    else:
        text = f"{len(vectors)} kernel vectors; basis candidate ({', '.join(str(x) for x in basis)})"
    data = {"relators": list(F.relators), "count": len(vectors),
            "basis": vector_to_dict(basis, F.relators) if basis is not None else None}
    return Output(text, data)


def check_xmod(file: str, settings: Optional[Settings] = None) -> Output:
    """
    Checks the crossed-module axioms exhaustively.

    Args:
        file (str): A crossed-module YAML or JSON file, or a catalog name.
    """
    report = validate_xmod(load_xmod(file), settings)
    return Output(_report(report), report.to_dict())


def dg_laws(file: str, laws: Optional[List[str]] = None, sample: bool = False,
            settings: Optional[Settings] = None) -> Output:
    """
    Runs the double-groupoid law suite on the double groupoid of a crossed module.

    Args:
        file (str): A crossed-module YAML or JSON file, or a catalog name.
        laws (Optional[List[str]]): Laws to check; all of them by default.
        sample (bool): Check a seeded sample of every law above law_cap instead of refusing it.
    """
    dg = lambda_squares(load_xmod(file), settings)
    report = check_laws(dg, laws, settings, sample)
    return Output(_report(report), report.to_dict())


def roundtrip(file: str, settings: Optional[Settings] = None) -> Output:
    """
    Passes a crossed module through its double groupoid and back, and the
    double groupoid through its crossed module and back.

    Args:
        file (str): A crossed-module YAML or JSON file, or a catalog name.
    """
    X = load_xmod(file)
    reports = [roundtrip_xmod(X, settings), roundtrip_dg(lambda_squares(X, settings), settings)]
    text = '\n'.join(f"{r.direction} {r.instance}: {'ok' if r.success else 'FAILED'} ({r.trace})" for r in reports)
    return Output(text, {"reports": [r.to_dict() for r in reports]})


def check_triple(file: str, sub: str, base: Optional[List[str]] = None,
                 settings: Optional[Settings] = None) -> Output:
    """
    Checks that (X, A, C) is connected: C meets every component of A and of X,
    and every path of X between base points can be moved into A.

    Args:
        file (str): A .cx2 complex file.
        sub (str): Name of the subcomplex A among the file's `sub` lines.
        base (Optional[List[str]]): Base points C; defaults to the file's `base` line.
    """
    parsed = _complex(file)
    A = parsed.cover.piece(sub)
    report = check_connected_triple(parsed.complex, A, base if base is not None else list(parsed.base), settings)
    return Output(render('triple.j2', **report.to_dict()), report.to_dict())


COMMANDS = [Command(f) for f in (pi1, pi1_cover, xmod, pi2, fox, check_xmod, dg_laws, roundtrip)] + \
    [Command(check_triple, options=('sub',))]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', default=argparse.SUPPRESS, help="Print JSON.")
    common.add_argument('--dot', action='store_true', default=argparse.SUPPRESS,
                        help="Print the quiver of the computed presentation as DOT.")
    common.add_argument('--bound', type=int, default=argparse.SUPPRESS, help="Search and completion bound.")
    common.add_argument('--probes', default=argparse.SUPPRESS, help="Comma separated probe names.")
    common.add_argument('-v', '--verbose', action='store_true', default=argparse.SUPPRESS, help="Debug logging.")

    parser = argparse.ArgumentParser(prog='vankampen', parents=[common],
                                     description="Fundamental groupoids of 2-complexes and crossed modules.")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest='name', metavar='command')
    subparsers.required = True
    for command in COMMANDS:
        command.add_to(subparsers, parents=[common])
    return parser


def _setup_logging(settings: Settings, verbose: bool):
    level = logging.DEBUG if verbose else getattr(logging, str(settings.log_level).upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(message)s", datefmt="[%X]",
                        handlers=[RichHandler(console=err_console, rich_tracebacks=True)], force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    settings = default_settings()
    changes = {}
    if getattr(args, 'bound', None) is not None:
        changes['bound'] = args.bound
    if getattr(args, 'probes', None):
        changes['probes'] = tuple(p.strip() for p in args.probes.split(',') if p.strip())
    settings = settings.override(**changes)
    _setup_logging(settings, getattr(args, 'verbose', False))
    logger.debug("Running %s with %s.", args.name, settings)

    try:
        output: Output = args.command.execute(args, settings=settings)
    except VanKampenError as e:
        err_console.print(f"[bold red]error:[/] {e}", highlight=False)
        return 1

    if getattr(args, 'json', False):
        console.out(json.dumps(output.data, indent=2, ensure_ascii=False), highlight=False)
    elif getattr(args, 'dot', False) and output.dot is not None:
        console.out(output.dot, highlight=False)
    else:
        console.out(output.text, highlight=False)
    return 0


if __name__ == '__main__':
    sys.exit(main())
