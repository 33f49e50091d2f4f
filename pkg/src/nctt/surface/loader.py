"""Reading, checking and importing ``.nctt`` files."""

from __future__ import annotations

import dataclasses
import os
import pathlib
import typing

from nctt import checker, nbe
from nctt.surface import elaborate, parser
from nctt.surface import syntax as s
from nctt.surface.lexer import SyntaxError_

PRELUDE_DIR = pathlib.Path(__file__).resolve().parent.parent / "prelude"
PRELUDE_ENTRY = "prelude.nctt"


class Diagnostic(Exception):
    def __init__(self, path: str, code: str, message: str, span=None):
        super().__init__(message)
        self.path = path
        self.code = code
        self.message = message
        self.span = span

    def __str__(self) -> str:
        line, col = (self.span.line, self.span.col) if self.span is not None else (1, 1)
        return f"{self.path}:{line}:{col}: error[{self.code}]: {self.message}"


@dataclasses.dataclass
class Module:
    path: pathlib.Path
    names: dict  # every name visible at the end of the file
    own: list  # definitions made in this file, in order


def prelude_dir() -> pathlib.Path:
    env = os.environ.get("NCTT_PRELUDE")
    return pathlib.Path(env) if env else PRELUDE_DIR


class Loader:
    def __init__(self) -> None:
        self.modules: dict[pathlib.Path, Module] = {}
        self.active: list[pathlib.Path] = []

    def load_prelude(self, directory: typing.Optional[pathlib.Path] = None) -> dict:
        entry = (directory or prelude_dir()) / PRELUDE_ENTRY
        if not entry.exists():
            raise FileNotFoundError(str(entry))
        return self.load(entry, {}).names

    def load(self, path: pathlib.Path, base: typing.Mapping[str, checker.Definition], shown: typing.Optional[str] = None) -> Module:
        """Check ``path`` with ``base`` in scope; files are checked once."""
        key = path.resolve()
        if key in self.modules:
            return self.modules[key]
        shown = shown or str(path)
        if key in self.active:
            raise Diagnostic(shown, "ImportCycle", f"import cycle through {path.name}")
        src = path.read_text(encoding="utf-8")
        self.active.append(key)
        try:
            mod = self._check_source(src, path, base, shown)
        finally:
            self.active.pop()
        self.modules[key] = mod
        return mod

    def _check_source(self, src: str, path: pathlib.Path, base, shown: str) -> Module:
        try:
            decls = parser.parse(src)
        except SyntaxError_ as err:
            raise Diagnostic(shown, err.code, err.message, err.span) from err
        ck = checker.Checker()
        ck.defs.update(base)
        own = []
        for d in decls:
            match d:
                case s.SImport(rel):
                    target = path.parent / rel
                    if not target.exists():
                        raise Diagnostic(shown, "ImportNotFound", f"cannot find imported file '{rel}'", d.span)
                    sub = self.load(target, base, str(target))
                    for name, defn in sub.names.items():
                        if ck.defs.get(name, defn) is not defn:
                            raise Diagnostic(shown, "DuplicateName", f"import of '{rel}' redefines '{name}'", d.span)
                        ck.defs[name] = defn
                case s.SDef(name):
                    try:
                        ty, body = elaborate.elaborate_def(d, ck.defs)
                        own.append(ck.check_decl(name, ty, body, d.span))
                    except SyntaxError_ as err:
                        raise Diagnostic(shown, err.code, err.message, err.span or d.span) from err
                    except checker.CheckError as err:
                        raise Diagnostic(shown, err.code, err.message, err.span or d.span) from err
                    except nbe.KernelError as err:
                        raise Diagnostic(shown, "Internal", str(err), d.span) from err
        return Module(path, dict(ck.defs), own)


def check_source(src: str, base: typing.Optional[dict] = None, path: str = "<input>") -> Module:
    """Check a source string (imports resolve relative to the working directory)."""
    return Loader()._check_source(src, pathlib.Path(path), base or {}, path)
