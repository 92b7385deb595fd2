# core/command_manager.py
import argparse
import logging
from typing import Callable, Dict, List, Tuple

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace], int]


class CommandManager:
    def __init__(self, verbose: bool = False):
        self.commands: Dict[str, Dict[str, object]] = {}
        if verbose:
            print("📦 Command Manager initialized.")

    def register(self, name: str, handler: Handler, description: str):
        """Registers a command and its handler function."""
        self.commands[name] = {"handler": handler, "description": description}

    def execute(self, command_name: str, args: argparse.Namespace) -> int | None:
        if command_name in self.commands:
            logger.info("executing command %s", command_name)
            return self.commands[command_name]["handler"](args)
        print(f"Unknown command: '{command_name}'. Use --help for options.")
        return None

    def describe(self) -> List[Tuple[str, str]]:
        return [(name, str(entry["description"])) for name, entry in self.commands.items()]
