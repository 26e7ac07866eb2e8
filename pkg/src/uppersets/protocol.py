"""Line protocol for driving an external set-valued functional.

One evaluation per request, ordering preserved, always serialized.  The
runner writes

    eval <number-of-atoms>
    <atom> <set literal>
    ...
    end

to the process's stdin and reads back exactly one line holding a canonical
set literal (``empty``, ``full``, ``cone`` or ``halfspaces: [...]``).  The
process exits on end-of-input.
"""

from __future__ import annotations

import subprocess

from .cone import Cone, ValidationError
from .measure_space import SimpleSetFunction
from .upperset import UpperSet
from .workspace import parse_set_literal


class ProtocolError(RuntimeError):
    pass


class ExternalFunctional:
    """A functional evaluated by a child process over the line protocol."""

    def __init__(self, command: tuple[str, ...], cone: Cone):
        if not command:
            raise ValidationError("external functional needs a command")
        self.name = "external:" + " ".join(command)
        self.command = tuple(command)
        self.cone = cone
        self._proc: subprocess.Popen | None = None
        self._memo: dict[SimpleSetFunction, UpperSet] = {}

    def _ensure_process(self) -> subprocess.Popen:
        if self._proc is None or self._proc.poll() is not None:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        return self._proc

    def __call__(self, F: SimpleSetFunction) -> UpperSet:
        cached = self._memo.get(F)
        if cached is not None:
            return cached
        proc = self._ensure_process()
        lines = [f"eval {len(F.space)}"]
        for atom, value in zip(F.space.atoms, F.values):
            lines.append(f"{atom} {value.literal()}")
        lines.append("end")
        try:
            proc.stdin.write("\n".join(lines) + "\n")
            proc.stdin.flush()
            answer = proc.stdout.readline()
        except (BrokenPipeError, OSError) as exc:
            raise ProtocolError(f"external functional died: {exc}") from exc
        if not answer:
            raise ProtocolError("external functional closed its output")
        try:
            result = parse_set_literal(answer.strip(), self.cone)
        except (ValueError, ValidationError) as exc:
            raise ProtocolError(f"unparsable response {answer.strip()!r}: {exc}") from exc
        self._memo[F] = result
        return result

    def close(self) -> None:
        if self._proc is not None and self._proc.poll() is None:
            try:
                self._proc.stdin.close()
                self._proc.wait(timeout=5)
            except Exception:
                self._proc.kill()
        self._proc = None


def serve(evaluate, cone: Cone, space, stdin, stdout) -> None:
    """Answer protocol requests; helper for implementing external functionals.

    ``evaluate`` maps a SimpleSetFunction to an UpperSet.
    """
    while True:
        header = stdin.readline()
        if not header:
            return
        header = header.strip()
        if not header:
            continue
        if not header.startswith("eval "):
            raise ProtocolError(f"bad request header {header!r}")
        count = int(header.split()[1])
        values = {}
        for _ in range(count):
            line = stdin.readline()
            if not line:
                raise ProtocolError("truncated request")
            atom, _, literal = line.strip().partition(" ")
            values[atom] = parse_set_literal(literal, cone)
        trailer = stdin.readline()
        if trailer.strip() != "end":
            raise ProtocolError("missing request trailer")
        F = SimpleSetFunction(space, tuple(values[a] for a in space.atoms))
        stdout.write(evaluate(F).literal() + "\n")
        stdout.flush()
