"""
file_handler.py - Handles writing and reading JSON verification reports
"""

import json
from pathlib import Path
from typing import Dict, Optional


def dump_document(document: Dict) -> str:
    """Deterministic JSON text: fixed key order, two-space indent, trailing newline"""
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


class FileHandler:
    """Saves report documents and loads them back"""

    def __init__(self, out_path: Optional[str] = None):
        """Initialize with the report path (None writes to stdout)"""
        self.out_path = Path(out_path) if out_path else None

    def save_report(self, document: Dict) -> bool:
        """Write the document to the report path, or print it"""
        text = dump_document(document)
        if self.out_path is None:
            print(text, end="")
            return True
        try:
            # Create the parent directory if it doesn't exist
            if self.out_path.parent and not self.out_path.parent.exists():
                self.out_path.parent.mkdir(parents=True, exist_ok=True)

            with open(self.out_path, 'w', encoding='utf-8') as f:
                f.write(text)

            print(f"✓ Report saved to {self.out_path}")
            return True

        except PermissionError:
            print(f"✗ Permission denied: Cannot write to {self.out_path}")
            return False
        except OSError as e:
            print(f"✗ Error saving report: {e}")
            return False

    def load_report(self, path: Optional[str] = None) -> Dict:
        """Load a report document; empty dict when missing or corrupted"""
        target = Path(path) if path else self.out_path
        if target is None or not target.exists():
            print(f"✗ No report found at {target}")
            return {}
        try:
            with open(target, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError:
            print(f"✗ Error: Report file is corrupted or invalid JSON format")
            return {}
