import unittest

import envs
import symbolic
from actor import (
    ActorDecision,
    EmptyCompletion,
    execute_subgoal,
    extract_command,
    get_library,
    parse_library,
    search_hint,
    select_skills,
)
from actor.actor import NO_COMMAND, current_state
from llm import Gateway, ScriptedBackend
from model import ConfigError, EpisodeStatus, Subgoal


class ExtractCommandTests(unittest.TestCase):
    def test_fenced_block(self):
        decision = extract_command("The toilet is next.\n```\ngo to toilet 1\n```\nThat should work.")
        self.assertEqual(decision, ActorDecision(ActorDecision.COMMAND, "go to toilet 1"))

    def test_last_fenced_block_last_line(self):
        text = "```\nlook\n```\nthen\n```text\nopen cabinet 1\ntake cloth 1 from cabinet 1\n```"
        self.assertEqual(extract_command(text).text, "take cloth 1 from cabinet 1")

    def test_inline_span(self):
        self.assertEqual(extract_command("I will run `pickup(b2)` now.").text, "pickup(b2)")

    def test_last_line_fallback(self):
        self.assertEqual(extract_command("Thinking...\n\ngo north\n").text, "go north")

    def test_markers_win_over_commands(self):
        self.assertEqual(extract_command("```\nlook\n```\nSUBGOAL COMPLETED").kind, ActorDecision.COMPLETED)
        decision = extract_command("```\nlook\n```\nREQUEST_REPLAN[soapbar is not here]")
        self.assertEqual(decision, ActorDecision(ActorDecision.REPLAN, "soapbar is not here"))
        both = extract_command("REQUEST_REPLAN[x] or maybe SUBGOAL COMPLETED")
        self.assertEqual(both.kind, ActorDecision.COMPLETED)

    def test_unclosed_replan_reason(self):
        self.assertEqual(extract_command("REQUEST_REPLAN[the door is locked").text, "the door is locked")

    def test_empty_completion(self):
        for text in ("", "   \n", "``````"):
            with self.assertRaises(EmptyCompletion, msg=repr(text)):
                extract_command(text)


class SkillTests(unittest.TestCase):
    def setUp(self):
        self.library = get_library("gripper")

    def test_longest_match_ranks_first(self):
        exemplars = select_skills(Subgoal("pick up object b3"), self.library)
        self.assertEqual(len(exemplars), 1)
        self.assertIn("pick(ball2,room1,right)", exemplars[0])

    def test_limit_truncates(self):
        subgoal = Subgoal("Pick up ball1 then move to room2 and drop ball1")
        self.assertEqual(len(select_skills(subgoal, self.library, limit=3)), 3)
        self.assertEqual(len(select_skills(subgoal, self.library, limit=1)), 1)
        with self.assertRaises(ValueError):
            select_skills(subgoal, self.library, limit=0)

    def test_ties_follow_library_order(self):
        data = {
            "skills": [
                {"name": "first", "pattern": "ball", "exemplar": "A"},
                {"name": "second", "pattern": "room", "exemplar": "B"},
            ],
            "fallback": {"name": "any", "exemplar": "F"},
        }
        library = parse_library(data, "toy")
        self.assertEqual(select_skills(Subgoal("room ball"), library), ["A", "B"])

    def test_fallback(self):
        self.assertEqual(select_skills(Subgoal("sing a song"), self.library), [self.library.fallback.exemplar])

    def test_fallback_is_required(self):
        with self.assertRaises(ConfigError):
            parse_library({"skills": []}, "toy")

    def test_every_domain_has_a_library(self):
        for domain in ("blocksworld", "gripper", "household", "adventure"):
            library = get_library(domain)
            self.assertTrue(library.instructions, domain)
            self.assertTrue(library.skills, domain)

    def test_search_hint(self):
        self.assertEqual(search_hint(Subgoal("x")), "")
        self.assertEqual(search_hint(Subgoal("x", ("toilet 1", "cabinet 1"))),
                         "Search these locations in order, most likely first: toilet 1, cabinet 1")


class ExecuteSubgoalTests(unittest.TestCase):
    def setUp(self):
        self.env = envs.get("household-picktwo-soapbar")
        self.ruleset = symbolic.get("household")
        self.memory = symbolic.init_memory(self.ruleset, self.env.initial_observation)
        self.library = get_library("household")
        self.subgoal = Subgoal("Take soapbar 1 from toilet 1", ("toilet 1",))

    def run_actor(self, responses, budget=35, **kwargs):
        backend = ScriptedBackend({"actor": responses})
        episode, memory = execute_subgoal(self.subgoal, self.env, self.memory, budget, Gateway(backend),
                                          self.library, ruleset=self.ruleset, **kwargs)
        return episode, memory, backend

    def test_completed(self):
        seen = []
        episode, memory, backend = self.run_actor(
            ["```\ngo to toilet 1\n```", "`take soapbar 1 from toilet 1`", "SUBGOAL COMPLETED"],
            on_step=lambda action, observation, mem: seen.append(action),
        )
        self.assertEqual(episode.status, EpisodeStatus.completed())
        self.assertEqual(episode.env_steps_consumed, 2)
        self.assertEqual(seen, ["go to toilet 1", "take soapbar 1 from toilet 1"])
        self.assertEqual(memory.holding, {"hand": "soapbar 1"})
        self.assertEqual(memory.step, 2)

        first = backend.requests[0].messages
        self.assertEqual([m.role for m in first], ["system", "user"])
        self.assertIn("Your Assigned Subgoal: Take soapbar 1 from toilet 1", first[1].content)
        self.assertIn("most likely first: toilet 1", first[1].content)
        last = backend.requests[2].messages
        self.assertEqual([m.role for m in last], ["system", "user", "assistant", "user", "assistant", "user"])
        self.assertEqual(last[-1].content, "You pick up the soapbar 1 from the toilet 1.")

    def test_replan_with_zero_steps(self):
        episode, memory, _ = self.run_actor(["REQUEST_REPLAN[The hand is full]"])
        self.assertEqual(episode.status, EpisodeStatus.replan("The hand is full"))
        self.assertEqual(episode.steps, ())
        self.assertIs(memory, self.memory)
        self.assertEqual(self.env.steps_taken, 0)

    def test_timeout_after_budget(self):
        episode, _, backend = self.run_actor(["```\nlook\n```"])
        self.assertEqual(episode.status, EpisodeStatus.timeout())
        self.assertEqual(episode.env_steps_consumed, 35)
        self.assertEqual(backend.calls["actor"], 35)
        self.assertEqual(self.env.steps_taken, 35)

    def test_empty_completions_use_turns_but_not_env_steps(self):
        episode, _, backend = self.run_actor(["", "SUBGOAL COMPLETED"], budget=5)
        self.assertEqual(episode.status.kind, EpisodeStatus.COMPLETED)
        self.assertEqual(episode.env_steps_consumed, 0)
        retry = backend.requests[1].messages
        self.assertEqual(retry[-1].content, NO_COMMAND)

        episode, _, _ = self.run_actor([""], budget=3)
        self.assertEqual(episode.status, EpisodeStatus.timeout())

    def test_invalid_action_is_reported_back(self):
        episode, _, _ = self.run_actor(["```\ntake soapbar 1 from toilet 1\n```", "REQUEST_REPLAN[not here]"])
        self.assertEqual(episode.steps[0][1], envs.INVALID_ACTION)
        self.assertEqual(episode.status.kind, EpisodeStatus.REPLAN)

    def test_location_state_binding(self):
        _, _, backend = self.run_actor(["SUBGOAL COMPLETED"], state_binding="location")
        self.assertNotIn("Memory Summary", backend.requests[0].messages[1].content)
        self.assertEqual(current_state(self.memory, "location"), "unknown")


if __name__ == "__main__":
    unittest.main()
