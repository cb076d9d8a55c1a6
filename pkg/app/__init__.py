"""app/__init__.py
This module provides the batch command-line interface of the weingarten-calculus application.
The App class loads the command plugins, builds one argparse subcommand per plugin, and
dispatches a single command per invocation through the CommandHandler.
"""
import argparse
import importlib
import logging.config
import os
import pkgutil
import time

from dotenv import load_dotenv

from app.calculus import WeingartenCalculus
from app.calculus.exceptions import ValidationError
from app.calculus.reporting import FORMATS, JSON
from app.commands import EXIT_VALIDATION, Command, CommandHandler, emit_error


class CommandLineParser(argparse.ArgumentParser):
    """An ArgumentParser that raises ValidationError instead of exiting on bad flags."""

    def error(self, message):
        raise ValidationError(message)


class App:
    """
    The main application class for the CLI tool. It handles logging and environment setup,
    loading of plugins and the dispatch of one command.
    """

    def __init__(self):
        os.makedirs('logs', exist_ok=True)
        self.configure_logging()
        load_dotenv()
        self.settings = self.load_environment_variables()
        self.command_handler = CommandHandler()

    def configure_logging(self):
        """
        Configures application logging from an external logging.conf file, or falls back to a
        basic configuration at INFO level. Log records go to logs/weingarten.log: stdout carries only
        command output and stderr only the JSON error line.
        """
        logging_conf_path = 'logging.conf'
        if os.path.exists(logging_conf_path):
            logging.config.fileConfig(logging_conf_path, disable_existing_loggers=False)
        else:
            logging.basicConfig(filename=os.path.join('logs', 'weingarten.log'), level=logging.INFO,
                                format='%(asctime)s - %(levelname)s - %(message)s')
        logging.info("Logging configured.")

    def load_environment_variables(self):
        """
        Loads all environment variables into the application's settings.

        Returns:
            dict: A dictionary containing all environment variables as key-value pairs.
        """
        settings = {key: value for key, value in os.environ.items()}
        logging.info("Environment variables loaded.")
        return settings

    def get_environment_variable(self, env_var: str = 'ENVIRONMENT', default_value=None):
        """
        Retrieves the value of a specified environment variable from the application's settings,
        or default_value when it is not set.
        """
        return self.settings.get(env_var, default_value)

    def load_plugins(self):
        """
        Loads command plugins from the plugins package, registering each discovered command
        with the command handler.
        """
        plugins_package = 'app.plugins'
        plugins_path = os.path.join(os.path.dirname(__file__), 'plugins')
        if not os.path.exists(plugins_path):
            logging.warning(f"Plugins directory '{plugins_path}' not found.")
            return
        for _, plugin_name, is_pkg in pkgutil.iter_modules([plugins_path]):
            if is_pkg:
                try:
                    plugin_module = importlib.import_module(f'{plugins_package}.{plugin_name}')
                    self.register_plugin_commands(plugin_module)
                except ImportError as e:
                    logging.error(f"Error importing plugin {plugin_name}: {e}")
                except Exception as e:
                    logging.error(f"Error loading plugin {plugin_name}: {e}")

    def register_plugin_commands(self, plugin_module):
        """
        Registers every Command subclass (other than Command itself) defined in a plugin module.
        """
        for item_name in dir(plugin_module):
            item = getattr(plugin_module, item_name)
            if isinstance(item, type) and issubclass(item, Command) and item is not Command:
                command_instance = item()
                self.command_handler.register_command(command_instance)
                logging.info(f"Command '{command_instance.name}' from plugin '{plugin_module.__name__}' registered.")

    def build_parser(self) -> CommandLineParser:
        """One subcommand per registered command, each sharing the output and cache flags."""
        common = CommandLineParser(add_help=False)
        common.add_argument('--format', choices=FORMATS, default=JSON, help="output format")
        common.add_argument('--cache-dir', dest='cache_dir', default=None,
                            help="Weingarten cache directory (overrides WG_CACHE_DIR)")
        common.add_argument('--max-k', dest='max_k', type=int, default=None,
                            help="largest k accepted for Gram and Weingarten matrices (overrides WG_MAX_K)")

        parser = CommandLineParser(prog='weingarten-calculus',
                                   description="Exact Weingarten calculus for easy quantum groups and spheres.")
        subparsers = parser.add_subparsers(dest='command', parser_class=CommandLineParser)
        for name, description in self.command_handler.get_commands():
            command = self.command_handler.commands[name]
            subparser = subparsers.add_parser(name, parents=[common], help=description, description=description)
            command.add_arguments(subparser)
        return parser

    def run(self, argv=None) -> int:
        """
        Loads the plugins, parses argv and runs one command.

        Returns:
            int: the process exit status. With no command the menu is shown and 2 is returned.
        """
        self.load_plugins()
        menu = DynamicMenuCommand(self.command_handler)
        argv = list(argv or [])
        if not argv:
            menu.execute()
            return EXIT_VALIDATION

        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except ValidationError as e:
            logging.error(f"Invalid command line {argv}: {e}")
            emit_error("ValidationError", str(e))
            return EXIT_VALIDATION

        if args.command not in self.command_handler.commands:
            logging.error(f"Unknown command: {args.command}")
            menu.execute()
            return EXIT_VALIDATION

        cache_dir = args.cache_dir or self.get_environment_variable('WG_CACHE_DIR')
        start = time.perf_counter()
        try:
            calculus = WeingartenCalculus(cache_dir=cache_dir, k_bound=args.max_k)
            exit_code = self.command_handler.execute_command(args.command, args, calculus)
        except Exception as e:
            logging.critical(f"Unexpected error in command '{args.command}'.", exc_info=True)
            emit_error(type(e).__name__, str(e))
            return 1
        finally:
            logging.info(f"Command '{args.command}' took {time.perf_counter() - start:.3f}s")
        logging.info(f"Command '{args.command}' finished with exit code {exit_code}.")
        return exit_code


class DynamicMenuCommand(Command):
    """Lists the loaded commands with their descriptions; shown when no command is given."""
    def __init__(self, command_handler):
        super().__init__()
        self.name = "show_menu"
        self.description = "List the available commands."
        self.command_handler = command_handler

    def execute(self, *args, **kwargs):
        commands = self.command_handler.get_commands()
        menu = "weingarten-calculus commands:\n"
        for name, description in commands:
            menu += f"\t{name}: {description}\n"
        print(menu)
        logging.info(f"Listed {len(commands)} commands.")
