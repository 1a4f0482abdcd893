import os
import tempfile
import unittest

import envs
from envs import INVALID_ACTION, UnknownTask, load_manifest
from envs.blocksworld import TABLE, BlocksWorld
from envs.household import list_objects
from model import ConfigError
from runner import RunConfig


class BlocksWorldTests(unittest.TestCase):
    def setUp(self):
        self.env = envs.get("blocksworld-tower4")

    def test_initial_render(self):
        self.assertEqual(
            self.env.initial_observation,
            "b1 is on the table. b2 is on the table. b3 is on b1. b4 is on b2. "
            "b1 is not clear. b2 is not clear. b3 is clear. b4 is clear. Robot arm is empty.",
        )

    def test_surface_forms_are_accepted(self):
        self.assertIn("You are holding b3.", self.env.step("Unstack b3 from b1"))
        self.assertIn("b3 is on the table.", self.env.step("put down b3."))
        self.assertIn("You are holding b1.", self.env.step("`pickup(b1)`"))

    def test_invalid_actions_do_not_change_state(self):
        before = self.env.state_key()
        for action in ("pickup(b1)", "stack(b3,b4)", "fly away", "unstack(b4,b1)"):
            self.assertEqual(self.env.step(action), INVALID_ACTION, action)
        self.assertEqual(self.env.state_key(), before)
        self.assertEqual(self.env.steps_taken, 4)

    def test_valid_actions_and_check_command(self):
        self.assertEqual(self.env.valid_actions(), ["unstack(b3,b1)", "unstack(b4,b2)"])
        self.assertEqual(self.env.step("check valid actions"), "Valid actions: unstack(b3,b1), unstack(b4,b2)")

    def test_solution_reaches_success_and_full_progress(self):
        for action in ("unstack(b3,b1)", "putdown(b3)", "unstack(b4,b2)", "putdown(b4)",
                       "pickup(b3)", "stack(b3,b4)", "pickup(b2)", "stack(b2,b3)",
                       "pickup(b1)", "stack(b1,b2)"):
            self.assertNotEqual(self.env.step(action), INVALID_ACTION, action)
        self.assertTrue(self.env.is_success())
        self.assertEqual(envs.progress_rate(self.env), 1.0)

    def test_goal_checkpoints(self):
        self.assertEqual([cp.label for cp in self.env.checkpoints],
                         ["b1 has been picked up", "b1 is on b2", "b2 has been picked up", "b2 is on b3",
                          "b3 has been picked up", "b3 is on b4"])
        self.env.step("unstack(b3,b1)")
        self.assertEqual(self.env.checkpoints_reached(), ["b3 has been picked up"])

    def test_progress_counts_checkpoints_ever_reached(self):
        env = BlocksWorld("t", {"b1": TABLE, "b2": TABLE}, [("b1", "b2")])
        env.step("pickup(b1)")
        env.step("stack(b1,b2)")
        env.step("unstack(b1,b2)")
        self.assertFalse(env.is_success())
        self.assertEqual(env.progress_rate(), 1.0)
        self.assertEqual(env.checkpoints_reached(), ["b1 has been picked up", "b1 is on b2"])

    def test_cyclic_support_is_rejected(self):
        with self.assertRaises(ConfigError):
            BlocksWorld("t", {"b1": "b2", "b2": "b1"}, [("b1", TABLE)])

    def test_generate_is_seeded(self):
        first = envs.blocksworld.generate(5, seed=3)
        second = envs.blocksworld.generate(5, seed=3)
        self.assertEqual(first.state_key(), second.state_key())
        self.assertEqual(first.goal, second.goal)
        self.assertFalse(first.is_success())


class GripperTests(unittest.TestCase):
    def setUp(self):
        self.env = envs.get("gripper-two-balls")

    def test_initial_render(self):
        self.assertEqual(
            self.env.initial_observation,
            "You are in room1. Ball1 is in room1. Ball2 is in room1. Gripper left is free. Gripper right is free.",
        )

    def test_function_and_sentence_forms(self):
        self.assertTrue(self.env.step("pick(ball1,room1,left)").startswith("You picked up ball1 with the left gripper."))
        self.assertTrue(self.env.step("pick up ball2 with the right gripper").startswith("You picked up ball2"))
        self.assertTrue(self.env.step("move to room2").startswith("You moved from room1 to room2."))
        self.assertTrue(self.env.step("drop ball1").startswith("You dropped ball1 in room2 from the left gripper."))
        self.assertEqual(self.env.step("drop(ball2,room2,right)")[:12], "You dropped ")
        self.assertTrue(self.env.is_success())

    def test_invalid_actions(self):
        self.assertEqual(self.env.step("move(room2,room1)"), INVALID_ACTION)
        self.assertEqual(self.env.step("drop(ball1,room1,left)"), INVALID_ACTION)
        self.env.step("pick(ball1,room1,left)")
        self.assertEqual(self.env.step("pick(ball2,room1,left)"), INVALID_ACTION)

    def test_pickups_are_intermediate_checkpoints(self):
        self.assertEqual([cp.label for cp in self.env.checkpoints],
                         ["ball1 has been picked up", "ball1 is in room2", "ball2 has been picked up", "ball2 is in room2"])
        self.env.step("pick(ball1,room1,left)")
        self.env.step("drop(ball1,room1,left)")
        self.assertEqual(self.env.progress_rate(), 0.25)

    def test_generate_needs_misplaced_ball(self):
        env = envs.gripper.generate(3, rooms=2, seed=5)
        self.assertFalse(env.is_success())
        with self.assertRaises(ConfigError):
            envs.gripper.generate(0)


class HouseholdTests(unittest.TestCase):
    def setUp(self):
        self.env = envs.get("household-picktwo-soapbar")

    def test_initial_observation_names_the_task(self):
        self.assertTrue(self.env.initial_observation.startswith("You are in the middle of a room."))
        self.assertTrue(self.env.initial_observation.endswith("\n\nYour task is to: put two soapbar in garbagecan."))

    def test_list_objects(self):
        self.assertEqual(list_objects([]), "nothing")
        self.assertEqual(list_objects(["cloth 1"]), "a cloth 1")
        self.assertEqual(list_objects(["a 1", "b 2", "c 3"]), "a a 1, a b 2, and a c 3")

    def test_closed_receptacles_hide_contents(self):
        self.assertEqual(self.env.step("go to cabinet 1"), "You arrive at cabinet 1. The cabinet 1 is closed.")
        self.assertEqual(self.env.step("take cloth 1 from cabinet 1"), INVALID_ACTION)
        self.assertEqual(self.env.step("open cabinet 1"),
                         "You open the cabinet 1. The cabinet 1 is open. In it, you see a cloth 1.")

    def test_one_object_in_hand(self):
        self.env.step("go to toilet 1")
        self.assertEqual(self.env.step("take soapbar 1 from toilet 1"), "You pick up the soapbar 1 from the toilet 1.")
        self.assertEqual(self.env.step("take soapbar 2 from toilet 1"), INVALID_ACTION)
        self.assertEqual(self.env.step("inventory"), "You are carrying: a soapbar 1.")

    def test_task_solution(self):
        for action in ("go to toilet 1", "take soapbar 1 from toilet 1", "go to garbagecan 1",
                       "put soapbar 1 in/on garbagecan 1", "go to toilet 1", "take soapbar 2 from toilet 1",
                       "go to garbagecan 1", "put soapbar 2 in/on garbagecan 1"):
            self.assertNotEqual(self.env.step(action), INVALID_ACTION, action)
        self.assertTrue(self.env.is_success())
        self.assertEqual(self.env.progress_rate(), 1.0)

    def test_partial_progress(self):
        self.env.step("go to toilet 1")
        self.env.step("take soapbar 1 from toilet 1")
        self.assertEqual(self.env.progress_rate(), 0.5)


class AdventureTests(unittest.TestCase):
    def setUp(self):
        self.env = envs.get("adventure-white-house")

    def test_walkthrough(self):
        walkthrough = ("go north", "go east", "open window", "go west", "go west",
                       "move rug", "open trap door", "go down", "go north")
        for action in walkthrough:
            self.assertNotEqual(self.env.step(action), INVALID_ACTION, action)
        self.assertTrue(self.env.is_success())
        self.assertEqual(self.env.progress_rate(), 1.0)
        self.assertEqual(len(self.env.checkpoints), 6)

    def test_hidden_exit_needs_trigger(self):
        self.env.step("go north")
        self.env.step("go east")
        self.assertEqual(self.env.step("go west"), "You can't go that way.")
        self.assertIn("allow entry", self.env.step("open window"))
        self.assertIn("You are in the Kitchen.", self.env.step("w"))

    def test_repeat_message(self):
        for action in ("go north", "go east", "open window", "go west", "go west"):
            self.env.step(action)
        self.assertIn("reveals a trap door", self.env.step("move carpet"))
        self.assertEqual(self.env.step("move rug"), "Having moved the carpet previously, you find it impossible to move it again.")

    def test_unknown_noun_is_invalid(self):
        self.assertEqual(self.env.step("take sword"), INVALID_ACTION)

    def test_inventory(self):
        self.assertEqual(self.env.step("inventory"), "You are empty-handed.")
        self.env.step("examine mailbox")
        self.assertEqual(self.env.step("take leaflet"), "You take the leaflet.")
        self.assertEqual(self.env.step("i"), "You are carrying: a leaflet.")


class ManifestTests(unittest.TestCase):
    def test_bundled_manifest(self):
        specs = load_manifest()
        ids = [spec.task_id for spec in specs]
        self.assertEqual(ids[:5], ["blocksworld-tower4", "blocksworld-tower3", "gripper-two-balls",
                                   "household-picktwo-soapbar", "adventure-white-house"])
        self.assertEqual(sum(1 for i in ids if i.startswith("blocksworld-rand-")), 20)
        self.assertEqual(sum(1 for i in ids if i.startswith("gripper-rand-")), 20)
        household = envs.find_task(specs, "household-picktwo-soapbar")
        self.assertTrue(household.replay.endswith("picktwo_soapbar.replay.yaml"))
        self.assertTrue(os.path.exists(household.replay))

    def test_generated_tasks_are_reproducible(self):
        spec = envs.find_task(load_manifest(), "blocksworld-rand-03")
        self.assertEqual(envs.build(spec).state_key(), envs.build(spec).state_key())

    def test_generated_tasks_are_distinct_under_the_default_seed(self):
        specs = [spec for spec in load_manifest() if spec.generator]
        keys = {envs.instance_key(envs.build(spec, RunConfig().seed)) for spec in specs}
        self.assertEqual(len(keys), len(specs))
        self.assertEqual(len(keys), 40)

    def test_run_seed_is_mixed_into_task_seeds(self):
        first, second = [spec for spec in load_manifest() if spec.generator][:2]
        self.assertEqual(envs.build(first, 5).seed, 5 * 1_000_000 + first.generator["seed"])
        self.assertNotEqual(envs.build(first, 5).seed, envs.build(second, 5).seed)

    def test_too_few_distinct_instances(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "tasks.yaml")
            with open(path, "w", encoding="utf-8") as f:
                f.write("generate:\n  - {prefix: x, domain: gripper, count: 5, balls: 1, rooms: 2}\n")
            with self.assertRaises(ConfigError):
                load_manifest(path)

    def test_bundled_fixtures_carry_three_to_seven_checkpoints(self):
        for spec in load_manifest():
            if spec.fixture:
                count = len(envs.build(spec).checkpoints)
                self.assertGreaterEqual(count, 3, spec.task_id)
                self.assertLessEqual(count, 7, spec.task_id)

    def test_unknown_task(self):
        with self.assertRaises(UnknownTask):
            envs.get("no-such-task")

    def test_duplicate_ids_are_rejected(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "tasks.yaml")
            with open(path, "w", encoding="utf-8") as f:
                f.write("generate:\n"
                        "  - {prefix: x, domain: gripper, count: 1, balls: 2}\n"
                        "  - {prefix: x, domain: gripper, count: 1, balls: 3}\n")
            with self.assertRaises(ConfigError):
                load_manifest(path)

    def test_unknown_domain_is_rejected(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "tasks.yaml")
            with open(path, "w", encoding="utf-8") as f:
                f.write("tasks:\n  - {id: a, domain: chess, fixture: a.json}\n")
            with self.assertRaises(ConfigError):
                load_manifest(path)


if __name__ == "__main__":
    unittest.main()
