"""Commands of the bruhat-lab command line."""

import argparse
import pathlib
from collections.abc import Callable
from functools import cached_property
from typing import ClassVar

from craft_cli import BaseCommand, emit

from . import export, lab
from .bruhat import lower_interval
from .config import LabConfig, OutputFormat, RunConfig
from .cosets import partition
from .coxeter import CoxeterSystem, Element, make_system
from .errors import InvalidInputError
from .quotient import quotient_graph_check, quotient_interval

FORMATS: tuple[OutputFormat, ...] = ("json", "dot", "table")


class LabCommand(BaseCommand):
    """Base for commands working on one Coxeter system.

    :cvar default_format: Output format used without ``--format``.
    :cvar formats: Output formats the command can produce.
    """

    common = True
    default_format: ClassVar[OutputFormat] = "json"
    formats: ClassVar[tuple[OutputFormat, ...]] = FORMATS

    def fill_parser(self, parser: argparse.ArgumentParser) -> None:
        """Add the system, element and output options."""
        system = parser.add_argument_group("system")
        system.add_argument("--type", choices=["A"], help="Cartan type of the system")
        system.add_argument("--rank", type=int, help="Rank of the type A system")
        system.add_argument(
            "--group",
            help="Group shorthand such as A3, the symmetric group on 4 letters",
        )
        system.add_argument(
            "--matrix-file",
            type=pathlib.Path,
            help="YAML or JSON file holding a Coxeter matrix",
        )
        parser.add_argument(
            "--w",
            action="append",
            metavar="ELEMENT",
            help="Element as a one-line permutation (e.g. 3412) or a word (e.g. '2 1 3')",
        )
        if self.formats:
            parser.add_argument(
                "--format",
                choices=self.formats,
                help=f"Output format (default: {self.default_format})",
            )
        parser.add_argument("--out", type=pathlib.Path, help="Write to this path")

    def setup(self, parsed_args: argparse.Namespace) -> tuple[RunConfig, CoxeterSystem]:
        """Build the run configuration and the Coxeter system."""
        config = RunConfig.from_args(parsed_args, default_format=self.default_format)
        system = make_system(config.system)
        emit.debug(f"System {system}, elements {config.elements or 'from scope'}")
        return config, system

    @staticmethod
    def single_element(config: RunConfig, system: CoxeterSystem) -> Element:
        """Return the one element given with ``--w``."""
        if len(config.elements) != 1:
            raise InvalidInputError(
                f"Expected exactly one --w, got {len(config.elements)}",
            )
        return system.parse_element(config.elements[0])

    @staticmethod
    def write(text: str, out: pathlib.Path | None) -> None:
        """Write ``text`` to ``out``, or show it."""
        if out is None:
            emit.message(text.rstrip("\n"))
            return
        emit.debug(f"Writing data to {out}")
        out.write_text(text, encoding="utf-8")
        emit.message(f"Wrote to {out}")


class ScopedCommand(LabCommand):
    """Base for commands running over a set of elements."""

    default_format = "table"
    formats = ("json", "table")

    def fill_parser(self, parser: argparse.ArgumentParser) -> None:
        """Add the scope options to the common ones."""
        super().fill_parser(parser)
        scope = parser.add_mutually_exclusive_group()
        scope.add_argument("--all", action="store_true", help="Use every group element")
        scope.add_argument("--sample", type=int, help="Use a seeded sample of this size")
        parser.add_argument("--seed", type=int, help="Seed for --sample")

    def scope(self, config: RunConfig, system: CoxeterSystem) -> list[Element]:
        """Return the elements to run over."""
        return lab.select_scope(
            system,
            literals=config.elements,
            exhaustive=config.exhaustive,
            sample=config.sample,
            seed=config.seed,
            lab_config=self.lab_config,
        )

    @cached_property
    def lab_config(self) -> LabConfig:
        """Scan defaults from the working directory."""
        return LabConfig.load()

    def render(self, config: RunConfig, reports: list[lab.CheckReport]) -> None:
        """Show or write reports in the configured format."""
        if config.output_format == "json":
            self.write(export.reports_json(reports), config.out)
        else:
            self.write(export.reports_text(reports), config.out)


class IntervalCommand(LabCommand):
    """Enumerate a lower interval and its Bruhat graph."""

    name = "interval"
    help_msg = "Enumerate a lower Bruhat interval B(w)"
    overview = """
    Enumerate every element below w in Bruhat order with the Bruhat graph.

    The DOT output groups vertices by length; --hasse keeps only the
    covering edges.
    """

    def fill_parser(self, parser: argparse.ArgumentParser) -> None:
        """Add the interval options."""
        super().fill_parser(parser)
        parser.add_argument("--hasse", action="store_true", help="Covering edges only")

    def run(self, parsed_args: argparse.Namespace) -> int:
        """Enumerate ``B(w)``.

        :param parsed_args: Parsed arguments from the CLI.
        """
        config, system = self.setup(parsed_args)
        w = self.single_element(config, system)
        interval = lower_interval(system, w)
        emit.progress(f"B({w}) has {len(interval)} elements", permanent=True)
        if config.output_format == "dot":
            text = export.interval_dot(interval, hasse=config.hasse)
        else:
            record = export.interval_record(system, interval, hasse=config.hasse)
            if config.output_format == "table":
                text = export.interval_text(record)
            else:
                text = export.to_json(record)
        self.write(text, config.out)
        return 0


class CosetsCommand(LabCommand):
    """Partition a lower interval into Bruhat cosets."""

    name = "cosets"
    help_msg = "Partition B(w) into Bruhat cosets"
    overview = """
    Partition B(w) into the two-sided cosets W_I u W_J with I and J the left
    and right descents of w, one row per coset with its maximum, length,
    minimum, middle length and side length.
    """
    default_format = "table"
    formats = ("json", "table")

    def run(self, parsed_args: argparse.Namespace) -> int:
        """Print the coset table of ``B(w)``.

        :param parsed_args: Parsed arguments from the CLI.
        """
        config, system = self.setup(parsed_args)
        w = self.single_element(config, system)
        table = export.coset_table(system, w, partition(system, w))
        if config.output_format == "json":
            self.write(export.to_json(table), config.out)
        else:
            self.write(export.coset_table_text(table), config.out)
        return 0


class QuotientCommand(LabCommand):
    """Build the quotient lower interval."""

    name = "quotient"
    help_msg = "Build the quotient lower interval C(w) and its graph"
    overview = """
    Build the poset of Bruhat cosets of B(w) with its quotient Bruhat graph,
    whether w is separated, and how the graph compares with the Bruhat graph
    on the coset minima.
    """

    def run(self, parsed_args: argparse.Namespace) -> int:
        """Build ``C(w)``.

        :param parsed_args: Parsed arguments from the CLI.
        """
        config, system = self.setup(parsed_args)
        w = self.single_element(config, system)
        interval = lower_interval(system, w)
        quotient = quotient_interval(system, w, interval)
        report = quotient_graph_check(system, w, quotient, interval)
        emit.progress(
            f"C({w}): {len(quotient)} cosets, {len(quotient.arcs)} arcs, "
            f"{'separated' if report.separated else 'not separated'}",
            permanent=True,
        )
        if config.output_format == "dot":
            text = export.quotient_dot(quotient)
        elif config.output_format == "table":
            text = export.coset_table_text(
                export.coset_table(system, w, list(quotient.cosets)),
            )
        else:
            text = export.to_json(export.quotient_record(system, quotient, report))
        self.write(text, config.out)
        return 0


class CheckCommand(ScopedCommand):
    """Run theorem and fact verifiers."""

    name = "check"
    help_msg = "Verify the coset decomposition statements over a scope"
    overview = """
    Run a verifier over the given elements, the whole group (--all) or a
    seeded sample (--sample). Exits with status 1 when a clause fails;
    skipped clauses do not count as failures.
    """

    verifiers: ClassVar[dict[str, Callable[[CoxeterSystem, Element], lab.CheckReport]]] = {
        "theorem1": lab.verify_theorem1,
        "theorem2": lab.verify_theorem2,
    }

    def fill_parser(self, parser: argparse.ArgumentParser) -> None:
        """Add the verifier name."""
        parser.add_argument("check", choices=["theorem1", "theorem2", "appendix"])
        super().fill_parser(parser)

    def run(self, parsed_args: argparse.Namespace) -> int:
        """Run the chosen verifier.

        :param parsed_args: Parsed arguments from the CLI.
        """
        config, system = self.setup(parsed_args)
        scope = self.scope(config, system)
        workers = self.lab_config.workers
        if parsed_args.check == "appendix":
            reports = [lab.verify_appendix(system, scope, workers=workers)]
        else:
            verifier = self.verifiers[parsed_args.check]
            reports = lab.run_verifier(verifier, system, scope, workers=workers)
        self.render(config, reports)
        failed = [report for report in reports if not report.passed]
        for name in sorted(
            {c.name for report in failed for c in report.clauses if c.outcome == "fail"},
        ):
            emit.progress(f"{name} failed: {lab.CLAUSE_STATEMENTS[name]}", permanent=True)
        if failed:
            emit.progress(f"{len(failed)} reports failed", permanent=True)
            return 1
        return 0


class ScanCommand(ScopedCommand):
    """Gather evidence about open questions."""

    name = "scan"
    help_msg = "Scan a scope for degree and Poincare polynomial evidence"
    overview = """
    deodhar: check deg(u) >= l(w) on B(w) and degree invariance on cosets.
    degmono: list u <= v in B(w) with deg(u) < deg(v).
    poincare: record the Poincare polynomials of w and of its coset minimum.
    witnesses: search for double coset pathologies.
    bottom: check that bottom cosets are faithful.

    Exits with status 1 only when a checked inequality fails.
    """
    default_format = "json"

    def fill_parser(self, parser: argparse.ArgumentParser) -> None:
        """Add the scan name."""
        parser.add_argument(
            "scan",
            choices=["deodhar", "degmono", "poincare", "witnesses", "bottom"],
        )
        super().fill_parser(parser)

    def run(self, parsed_args: argparse.Namespace) -> int:
        """Run the chosen scan.

        :param parsed_args: Parsed arguments from the CLI.
        """
        config, system = self.setup(parsed_args)
        scope = self.scope(config, system)
        workers = self.lab_config.workers
        if parsed_args.scan == "deodhar":
            report = lab.deodhar_scan(system, scope, workers=workers)
        elif parsed_args.scan == "degmono":
            report = lab.degree_monotone_scan(system, scope, workers=workers)
        elif parsed_args.scan == "poincare":
            report = lab.poincare_scan(system, scope, workers=workers)
        elif parsed_args.scan == "witnesses":
            report = lab.remark_witness_hunt(system, scope)
        else:
            report = lab.bottom_coset_scan(system, scope, workers=workers)
        self.render(config, [report])
        return 0 if report.passed else 1


class ExportCommand(LabCommand):
    """Write every rendering of one element."""

    name = "export"
    help_msg = "Write interval, coset and quotient files for w into a directory"
    overview = """
    Write interval.json, interval.dot, cosets.txt, cosets.json,
    quotient.json and quotient.dot into the --out directory.
    """
    formats = ()

    def fill_parser(self, parser: argparse.ArgumentParser) -> None:
        """Add the export options."""
        super().fill_parser(parser)
        parser.add_argument("--hasse", action="store_true", help="Covering edges only")

    def run(self, parsed_args: argparse.Namespace) -> int:
        """Write the files.

        :param parsed_args: Parsed arguments from the CLI.
        """
        config, system = self.setup(parsed_args)
        if config.out is None:
            raise InvalidInputError("export needs --out DIRECTORY")
        w = self.single_element(config, system)
        for path in export.export_all(system, w, config.out, hasse=config.hasse):
            emit.message(f"Wrote to {path}")
        return 0
