"""cli handler for bruhat-lab."""

import sys

from craft_cli import (
    ArgumentParsingError,
    CommandGroup,
    CraftError,
    Dispatcher,
    EmitterMode,
    ProvideHelpException,
    emit,
)

from .commands import (
    CheckCommand,
    CosetsCommand,
    ExportCommand,
    IntervalCommand,
    QuotientCommand,
    ScanCommand,
)


def main() -> int:
    """Entrypoint and cli handler."""
    appname = "bruhat-lab"
    emit.init(
        mode=EmitterMode.BRIEF,
        appname=appname,
        greeting="Starting bruhat-lab",
        streaming_brief=True,
    )

    command_groups = [
        CommandGroup("Intervals", [IntervalCommand, CosetsCommand, QuotientCommand]),
        CommandGroup("Lab", [CheckCommand, ScanCommand, ExportCommand]),
    ]
    summary = "Explore lower Bruhat intervals and their coset decompositions"

    try:
        dispatcher = Dispatcher(
            appname=appname,
            commands_groups=command_groups,
            summary=summary,
        )
        dispatcher.pre_parse_args(sys.argv[1:])
        dispatcher.load_command(None)
        retcode = dispatcher.run() or 0
    except ArgumentParsingError as err:
        print(err, file=sys.stderr)  # to stderr, as argparse normally does
        emit.ended_ok()
        retcode = 2
    except ProvideHelpException as err:
        print(err, file=sys.stderr)
        emit.ended_ok()
        retcode = 0
    except CraftError as err:
        emit.error(err)
        retcode = err.retcode
    except KeyboardInterrupt as exc:
        error = CraftError("Interrupted.")
        error.__cause__ = exc
        emit.error(error)
        retcode = 1
    except Exception as exc:  # noqa: BLE001
        error = CraftError(f"Application internal error: {exc!r}")
        error.__cause__ = exc
        emit.error(error)
        retcode = 1
    else:
        emit.ended_ok()
    return retcode
