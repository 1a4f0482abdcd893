import json
import os
import tempfile
import unittest

import duet
from console import Logger


class CliTests(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.output = os.path.join(self.tmp.name, "results")

    def tearDown(self):
        self.tmp.cleanup()
        Logger.configure(quiet=False)

    def main(self, *argv):
        return duet.main([*argv, "--quiet"])

    def test_run_solved_task(self):
        code = self.main("run", "--task", "gripper-two-balls", "--output-dir", self.output)
        self.assertEqual(code, duet.EXIT_OK)
        self.assertTrue(os.listdir(os.path.join(self.output, "gripper-two-balls")))

    def test_run_failed_task(self):
        code = self.main("run", "--task", "blocksworld-tower4", "--max-total-steps", "1",
                         "--output-dir", self.output)
        self.assertEqual(code, duet.EXIT_FAILED)

    def test_configuration_errors(self):
        self.assertEqual(self.main("run", "--task", "no-such-task", "--output-dir", self.output), duet.EXIT_CONFIG)
        self.assertEqual(self.main("run", "--task", "gripper-two-balls", "--max-sub-steps", "0"), duet.EXIT_CONFIG)
        missing = os.path.join(self.tmp.name, "missing.yaml")
        self.assertEqual(self.main("run", "--task", "gripper-two-balls", "--config", missing), duet.EXIT_CONFIG)

    def test_usage_errors_are_config_errors(self):
        with self.assertRaises(SystemExit) as ctx:
            duet.main(["run"])
        self.assertEqual(ctx.exception.code, duet.EXIT_CONFIG)

    def test_unsupported_oracle_domain_fails(self):
        code = self.main("run", "--task", "household-picktwo-soapbar", "--output-dir", self.output)
        self.assertEqual(code, duet.EXIT_FAILED)

    def test_suite_then_report(self):
        code = self.main("suite", "--domain", "gripper", "--task", "gripper-two-balls",
                         "--task", "gripper-rand-01", "--output-dir", self.output)
        self.assertEqual(code, duet.EXIT_OK)
        with open(os.path.join(self.output, "suite.json"), encoding="utf-8") as f:
            suite = json.load(f)
        self.assertEqual(suite["report"]["overall"]["tasks"], 2)
        self.assertEqual([row["task_id"] for row in suite["tasks"]], ["gripper-two-balls", "gripper-rand-01"])

        report_file = os.path.join(self.tmp.name, "report.json")
        self.assertEqual(self.main("report", self.output, "--json", report_file), duet.EXIT_OK)
        with open(report_file, encoding="utf-8") as f:
            self.assertEqual(json.load(f)["overall"]["successes"], 2)

    def test_report_on_empty_directory(self):
        self.assertEqual(self.main("report", self.tmp.name), duet.EXIT_CONFIG)

    def test_replay_with_compare(self):
        self.assertEqual(self.main("replay", "--task", "household-picktwo-soapbar", "--strict",
                                   "--output-dir", self.output), duet.EXIT_OK)
        task_dir = os.path.join(self.output, "household-picktwo-soapbar")
        run_dir = os.path.join(task_dir, sorted(os.listdir(task_dir))[0])
        trajectory = os.path.join(run_dir, "trajectory.jsonl")

        self.assertEqual(self.main("replay", "--task", "household-picktwo-soapbar", "--strict",
                                   "--compare", trajectory, "--output-dir", self.output), duet.EXIT_OK)

        with open(trajectory, "a", encoding="utf-8") as f:
            f.write("{}\n")
        self.assertEqual(self.main("replay", "--task", "household-picktwo-soapbar",
                                   "--compare", trajectory, "--output-dir", self.output), duet.EXIT_FAILED)


if __name__ == "__main__":
    unittest.main()
