import io
import json
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path

from qseries_checker.file_handler import FileHandler, dump_document


class TestFileHandler(unittest.TestCase):

    def setUp(self):
        """Set up a temporary report directory"""
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / "reports" / "run.json"
        self.document = {"schema_version": 1, "summary": {"passed": 2, "failed": 0}}

    def tearDown(self):
        self.tmp.cleanup()

    def test_save_and_load(self):
        """Test writing a report and reading it back"""
        handler = FileHandler(str(self.path))
        with redirect_stdout(io.StringIO()) as out:
            self.assertTrue(handler.save_report(self.document))
        self.assertIn("✓", out.getvalue())
        self.assertTrue(self.path.exists())
        self.assertEqual(handler.load_report(), self.document)

    def test_deterministic_text(self):
        """Test the JSON text is identical across writes"""
        handler = FileHandler(str(self.path))
        with redirect_stdout(io.StringIO()):
            handler.save_report(self.document)
            first = self.path.read_bytes()
            handler.save_report(self.document)
        self.assertEqual(first, self.path.read_bytes())
        self.assertEqual(first.decode("utf-8"), dump_document(self.document))
        self.assertTrue(first.endswith(b"\n"))

    def test_stdout_when_no_path(self):
        """Test the document is printed when no path is given"""
        with redirect_stdout(io.StringIO()) as out:
            FileHandler().save_report(self.document)
        self.assertEqual(json.loads(out.getvalue()), self.document)

    def test_load_missing(self):
        """Test loading a missing report"""
        with redirect_stdout(io.StringIO()):
            self.assertEqual(FileHandler(str(self.path)).load_report(), {})

    def test_load_corrupted(self):
        """Test loading an invalid JSON file"""
        self.path.parent.mkdir(parents=True)
        self.path.write_text("{not json", encoding="utf-8")
        with redirect_stdout(io.StringIO()) as out:
            self.assertEqual(FileHandler(str(self.path)).load_report(), {})
        self.assertIn("✗", out.getvalue())


if __name__ == "__main__":
    unittest.main()
