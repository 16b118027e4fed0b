"""
Output Rendering for the BCJ Command Line

This module contains the functions that turn command results into stdout
text, separated from the command logic for better maintainability.
"""

import json
import sys
from dataclasses import dataclass, field
from typing import Any, List, Optional, TextIO

import pandas as pd


@dataclass
class CommandResult:
    """
    Outcome of one subcommand.

    Attributes:
        status (str): "ok" or "error"
        payload: Command-specific JSON value
        diagnostics (list): Human-readable notes; name the violated
            precondition on error
        text (str, optional): Plain output that replaces the JSON rendering
    """
    status: str = "ok"
    payload: Any = None
    diagnostics: List[str] = field(default_factory=list)
    text: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> str:
        return json.dumps({
            "status": self.status,
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        }, indent=2)


def ok_result(payload: Any = None, text: Optional[str] = None,
              diagnostics: Optional[List[str]] = None) -> CommandResult:
    return CommandResult("ok", payload, diagnostics or [], text)


def error_result(message: str, diagnostics: Optional[List[str]] = None) -> CommandResult:
    return CommandResult("error", {"error": message}, [message] + (diagnostics or []))


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False).rstrip("\n")


def frame_to_table(frame: pd.DataFrame) -> str:
    """Fixed-width table for terminals."""
    return frame.to_string(index=False)


def render_result(result: CommandResult, out: TextIO = None):
    """Write a result to stdout: plain text when given, JSON otherwise."""
    out = out or sys.stdout
    if result.ok and result.text is not None:
        out.write(result.text + "\n")
    else:
        out.write(result.to_json() + "\n")
