from contextlib import contextmanager
from typing import IO, Iterable

import ALGtools.algebras as algebras
from ALGtools.report import Report
from ALGtools.visitor import GenericVisitor


class SpecPrinter(GenericVisitor):
    """
    Prints an algebra spec as an indented tree, one construction per level.
    """
    def __init__(self, file: IO[str] = None) -> None:
        super().__init__()

        self.file = file
        self.indent_ctr = 0
        self.indent_symbol = "\t"

    @contextmanager
    def indented(self):
        self.indent_ctr += 1
        yield
        self.indent_ctr -= 1

    @property
    def indent(self):
        return self.indent_symbol * self.indent_ctr

    def print(self, line: str):
        print(self.indent + line, file=self.file)

    def header(self, spec: algebras.AlgebraSpec) -> str:
        ring = f" over {spec.ring}" if self.current_depth == 1 else ""
        return f"{spec.kind}{ring} (rank {spec.rank}, {'associative' if spec.associative else 'non-associative'})"

    def visitSpec(self, spec: algebras.AlgebraSpec):
        self.print(self.header(spec))
        with self.indented():
            self.print(f"basis: {' '.join(spec.basis_names)}")

    def visitQuaternionAlgebra(self, spec: algebras.QuaternionAlgebra):
        self.print(self.header(spec))
        with self.indented():
            self.print(f"a = {spec.a}, b = {spec.b}")
            self.print(f"basis: {' '.join(spec.basis_names)}")

    def visitDoubledAlgebra(self, spec: algebras.DoubledAlgebra):
        self.print(self.header(spec))
        with self.indented():
            self.print(f"lambda = {spec.lam}")
            self.print("base:")
            with self.indented():
                self.visit(spec.base)


def summarize_counts(counts: dict) -> str:
    return ', '.join(f"{key}={value}" for key, value in counts.items() if key != 'work')


class ReportPrinter:
    """
    Human-readable table of reports: one row per claim, followed by the
    reason and witness of every non-passing row.
    """
    columns = ('claim', 'algebra', 'verdict', 'counts')

    def __init__(self, file: IO[str] = None) -> None:
        self.file = file

    def print(self, line: str = ''):
        print(line, file=self.file)

    def rows(self, reports: list[Report]) -> list[tuple[str, ...]]:
        return [(r.claim, r.algebra, r.verdict, summarize_counts(r.counts)) for r in reports]

    def run(self, reports: Iterable[Report]) -> None:
        reports = list(reports)
        rows = self.rows(reports)
        widths = [max(len(cell) for cell in column) for column in zip(self.columns, *rows)]

        def line(cells):
            return '  '.join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()

        self.print(line(self.columns))
        self.print(line('-' * width for width in widths))
        for row in rows:
            self.print(line(row))

        for report in reports:
            if report.passed:
                continue
            self.print()
            self.print(f"{report.claim} {report.verdict}: {report.reason}")
            if report.witness:
                for item in report.witness:
                    self.print(f"\twitness {item}")
