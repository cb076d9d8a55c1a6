"""app/commands/__init__.py
This module defines the core command pattern implementations including the base Command class
and the CommandHandler for registering and executing commands. Every CLI command is a Command
subclass living in a plugin package; the handler runs it, renders its Report to stdout and turns
errors into exit codes with a one-line JSON error object on stderr.
"""
import json
import logging
import sys

from app.calculus.exceptions import GramSingular, ValidationError

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_VALIDATION = 2
EXIT_SINGULAR = 3


def emit_error(kind: str, message: str) -> None:
    """Write the machine-readable error line to stderr."""
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")


class Command:
    """
    A base class for all command plugins, providing the metadata used for subcommand
    registration and for the command menu.

    Attributes:
        name (str): The command's unique name, used for invocation and identification.
        description (str): A brief description of what the command does, used for help output.
    """
    def __init__(self):
        self.name = ""
        self.description = ""

    def add_arguments(self, parser):
        """Declare the command's flags on its argparse subparser. No flags by default."""

    def execute(self, args, calculus):
        """
        Run the command's logic. This method should be overridden in subclasses.

        Args:
            args (argparse.Namespace): The validated command line flags.
            calculus (WeingartenCalculus): The shared calculus facade and its cache.

        Returns:
            Report: The result to render, or None when the command prints on its own.

        Raises:
            NotImplementedError: If the subclass does not implement this method.
        """
        raise NotImplementedError("Command execution not implemented.")


class CommandHandler:
    """
    Manages registration and execution of commands. It acts as a central repository of commands,
    facilitating command lookup and execution based on the parsed command line.
    """
    def __init__(self):
        self.commands = {}

    def register_command(self, command):
        """
        Registers a command instance with the command handler.

        Notes:
            If a command with the same name is already registered, it will be overwritten,
            and a warning will be logged.
        """
        if command.name in self.commands:
            logging.warning(f"Command '{command.name}' is already registered. Overwriting.")
        self.commands[command.name] = command
        logging.info(f"Command '{command.name}' registered successfully.")

    def get_commands(self):
        """
        Returns a list of (name, description) tuples for all registered commands, sorted by name.
        """
        return sorted((cmd.name, cmd.description) for cmd in self.commands.values())

    def execute_command(self, name, args=None, calculus=None) -> int:
        """
        Executes a command by name and renders its report.

        Returns:
            int: 0 on success, 1 when a verification report has failing checks, 2 on a validation
            error and 3 on a singular Gram matrix.

        Raises:
            KeyError: If no command with that name is registered.
        """
        command = self.commands.get(name)
        if not command:
            logging.error(f"Command '{name}' not found.")
            raise KeyError(name)
        try:
            report = command.execute(args, calculus)
        except GramSingular as e:
            logging.error(f"Error executing command '{name}': {e}")
            emit_error("GramSingular", str(e))
            return EXIT_SINGULAR
        except ValidationError as e:
            logging.error(f"Error executing command '{name}': {e}")
            emit_error(type(e).__name__, str(e))
            return EXIT_VALIDATION
        if report is None:
            return EXIT_OK
        if calculus is not None:
            report.record_cache(calculus.cache)
        sys.stdout.write(report.render(getattr(args, "format", "json")))
        return EXIT_OK if report.passed else EXIT_FAILED_CHECKS
