import gzip
import os
import tempfile
import unittest

import output
from model import ConfigError
from sources import load_document, resolve


class LoadDocumentTests(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name, content, compress=False):
        path = os.path.join(self.tmp.name, name)
        data = content.encode("utf-8")
        with open(path, "wb") as f:
            f.write(gzip.compress(data) if compress else data)
        return path

    def test_yaml_and_json(self):
        self.assertEqual(load_document(self.path("a.yaml", "blocks: [b1, b2]\n")), {"blocks": ["b1", "b2"]})
        self.assertEqual(load_document(self.path("a.json", '{"on": "b1"}')), {"on": "b1"})

    def test_gzip(self):
        path = self.path("world.json.gz", '{"rooms": 2}', compress=True)
        self.assertEqual(load_document(path), {"rooms": 2})
        self.assertEqual(load_document("file://" + path), {"rooms": 2})

    def test_unreadable_file(self):
        with self.assertRaises(ConfigError):
            load_document(os.path.join(self.tmp.name, "missing.yaml"))

    def test_resolve(self):
        self.assertEqual(resolve("a/b.json", "/base"), os.path.join("/base", "a/b.json"))
        self.assertEqual(resolve("https://host/x.json", "/base"), "https://host/x.json")
        with self.assertRaises(ConfigError):
            resolve("", "/base")


class OutputTests(unittest.TestCase):
    def test_run_directories_are_unique(self):
        with tempfile.TemporaryDirectory() as tmp:
            first = output.run_directory(tmp, "task", timestamp="20260101T000000")
            second = output.run_directory(tmp, "task", timestamp="20260101T000000")
            self.assertEqual(os.path.basename(second), "20260101T000000-2")
            self.assertNotEqual(first, second)

    def test_unknown_output_type(self):
        for kind in ("csv", "none", ""):
            with self.assertRaises(ValueError):
                output.get(kind)
        self.assertIs(output.get("Episode"), output.episode_files)


if __name__ == "__main__":
    unittest.main()
