import json
import os
import tempfile
import unittest
from unittest.mock import MagicMock, patch

import requests

from belief import QUESTIONS, parse_answer
import envs
import llm
from llm import (
    BackendUnavailable,
    ChatRequest,
    Gateway,
    GatewayError,
    HttpBackend,
    InvalidRequest,
    MissingVariable,
    OracleBackend,
    OracleUnsupported,
    PromptTemplate,
    ReplayBackend,
    ReplayExhausted,
    ReplayMismatch,
    ScriptedBackend,
    assistant,
    documented_bindings,
    load_template,
    render_template,
    system,
    user,
)
from model import ConfigError


def _request(component="planner", *messages):
    return ChatRequest((system("sys"),) + (messages or (user("hello there"),)), component)


def _response(status=200, body=None):
    response = MagicMock()
    response.status_code = status
    response.text = json.dumps(body or {})
    response.json.return_value = body
    return response


class TemplateTests(unittest.TestCase):
    def test_every_bundled_template_matches_its_documented_bindings(self):
        bindings = documented_bindings()
        self.assertEqual(len(bindings), 16)
        for name, variables in bindings.items():
            template = load_template(name)
            self.assertEqual(template.required, frozenset(variables), name)
            text = render_template(template, {var: f"<{var}>" for var in variables})
            self.assertNotIn("{{", text, name)

    def test_synthesis_templates_keep_the_reference_wording(self):
        body = load_template("synthesis_system").body
        self.assertTrue(body.startswith(
            "You are a high-level planner agent. Based on the previous belief, current memory state, "
            "latest plan, and analysis of the last subgoal execution (Q&A), decide the next course of action."))
        for line in ('1. A concise status line reflecting the current progress relative to the plan '
                     '(starting with "Status: ").',
                     "2. and the justification for the status line.",
                     "3. A list of concise new facts learned or hypotheses formed about the environment/task "
                     "based only on the last subgoal's execution, especially failures or unexpected outcomes. "
                     "Focus on actionable insights or constraints."):
            self.assertIn(line, body)
        self.assertTrue(body.endswith('"learned_facts" (list of strings, can be empty).'))

        instance = load_template("synthesis_instance").body
        self.assertTrue(instance.startswith("Previous Belief:\n{{ previous_belief }}"))
        self.assertIn("Output an empty list [] if nothing significant was learned.", instance)

    def test_verification_instance_layout(self):
        text = llm.render("verification_instance", context="<ctx>", question="<q>")
        self.assertEqual(text, "Based ONLY on the provided context below, answer the following question.\n\n"
                               "CONTEXT:\n<ctx>\n\nQUESTION: <q>\n\n"
                               "ANSWER (e.g., Yes/No/Uncertain/Value): [Your Answer]\n"
                               "JUSTIFICATION: [Your Brief Reasoning]")

    def test_missing_variable(self):
        template = PromptTemplate.from_text("t", "Goal: {{ goal }} / {{observation}}")
        with self.assertRaises(MissingVariable) as ctx:
            render_template(template, {"goal": "x"})
        self.assertEqual(ctx.exception.name, "observation")
        with self.assertRaises(KeyError):
            render_template(template, {"goal": "x", "observation": None})

    def test_bindings_are_not_escaped(self):
        template = PromptTemplate.from_text("t", "{{ a }}")
        self.assertEqual(render_template(template, {"a": "{{ b }} <x>"}), "{{ b }} <x>")


class ChatRequestTests(unittest.TestCase):
    def test_first_message_must_be_system(self):
        with self.assertRaises(InvalidRequest):
            ChatRequest((user("hi"),), "planner")

    def test_component_tag_is_checked(self):
        with self.assertRaises(InvalidRequest):
            ChatRequest((system("s"),), "critic")

    def test_named_message_serialization(self):
        self.assertEqual(assistant("x", name="analysis_feedback").to_dict(),
                         {"role": "assistant", "content": "x", "name": "analysis_feedback"})
        self.assertEqual(user("x").to_dict(), {"role": "user", "content": "x"})


class GatewayTests(unittest.TestCase):
    def test_tokens_are_recorded_per_component(self):
        gateway = Gateway(ScriptedBackend({"planner": ["one two three"], "actor": ["go"]}))
        self.assertEqual(gateway.ask("planner", [system("a b"), user("c")]), "one two three")
        gateway.ask("actor", [system("a"), user("b")])
        self.assertEqual(gateway.ledger.component("planner"), (3, 3))
        self.assertEqual(gateway.ledger.component("actor"), (2, 1))
        self.assertEqual(gateway.calls["planner"], 1)
        self.assertFalse(gateway.sequential)

    def test_replay_backend_is_sequential(self):
        self.assertTrue(Gateway(ReplayBackend(["x"])).sequential)


class ScriptedBackendTests(unittest.TestCase):
    def test_last_response_repeats_and_exceptions_are_raised(self):
        backend = ScriptedBackend({"planner": ["a", "b"], "actor": [BackendUnavailable("down")]})
        self.assertEqual([backend.complete(_request()).text for _ in range(3)], ["a", "b", "b"])
        with self.assertRaises(BackendUnavailable):
            backend.complete(_request("actor"))
        with self.assertRaises(GatewayError):
            backend.complete(_request("synthesis"))

    def test_callable_script(self):
        backend = ScriptedBackend({"planner": lambda request: request.last_user_content().upper()})
        self.assertEqual(backend.complete(_request()).text, "HELLO THERE")


class ReplayBackendTests(unittest.TestCase):
    def test_responses_in_order_then_exhausted(self):
        backend = ReplayBackend(["first", {"response": "second"}])
        self.assertEqual(backend.complete(_request()).text, "first")
        self.assertEqual(backend.complete(_request()).text, "second")
        with self.assertRaises(ReplayExhausted) as ctx:
            backend.complete(_request())
        self.assertEqual(ctx.exception.position, 3)

    def test_strict_mode_checks_component_and_prefix(self):
        entries = [{"response": "x", "component": "actor"}]
        with self.assertRaises(ReplayMismatch):
            ReplayBackend(entries, strict=True).complete(_request("planner"))
        self.assertEqual(ReplayBackend(entries).complete(_request("planner")).text, "x")

        entries = [{"response": "x", "expected_prompt_prefix": "Current Belief State:"}]
        with self.assertRaises(ReplayMismatch):
            ReplayBackend(entries, strict=True).complete(_request())
        request = _request("planner", user("Current Belief State:\n..."))
        self.assertEqual(ReplayBackend(entries, strict=True).complete(request).text, "x")

    def test_from_file_accepts_responses_mapping(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "t.yaml")
            with open(path, "w", encoding="utf-8") as f:
                f.write("responses:\n  - component: planner\n    response: |-\n      line one\n      line two\n")
            backend = ReplayBackend.from_file(path, strict=True)
            self.assertEqual(backend.complete(_request()).text, "line one\nline two")
            self.assertEqual(backend.remaining(), 0)

    def test_malformed_entry(self):
        with self.assertRaises(ConfigError):
            ReplayBackend([{"component": "planner"}])

    def test_factory_needs_transcript(self):
        with self.assertRaises(ConfigError):
            llm.get("replay", {})
        with self.assertRaises(ConfigError):
            llm.get("carrier-pigeon")


class HttpBackendTests(unittest.TestCase):
    def setUp(self):
        self.backend = HttpBackend(base_url="http://llm.local/v1/", model="m", api_key="k",
                                   max_retries=2, backoff=0)
        self.ok = _response(200, {
            "choices": [{"message": {"content": "EXECUTE_SUBGOAL[\n  DESC: x\n]"}}],
            "usage": {"prompt_tokens": 12, "completion_tokens": 4},
        })

    @patch("llm.http_backend.requests.post")
    def test_payload_and_usage(self, post):
        post.return_value = self.ok
        completion = self.backend.complete(_request("planner", user("hi"), assistant("f", name="analysis_feedback")))
        self.assertEqual((completion.prompt_tokens, completion.completion_tokens), (12, 4))

        url = post.call_args.args[0]
        self.assertEqual(url, "http://llm.local/v1/chat/completions")
        payload = post.call_args.kwargs["json"]
        self.assertEqual(payload["model"], "m")
        self.assertEqual(payload["messages"][2], {"role": "assistant", "content": "f", "name": "analysis_feedback"})
        self.assertEqual(post.call_args.kwargs["headers"]["Authorization"], "Bearer k")

    @patch("llm.http_backend.requests.post")
    def test_transient_errors_are_retried(self, post):
        post.side_effect = [_response(429), requests.ConnectionError("reset"), self.ok]
        self.assertTrue(self.backend.complete(_request()).text.startswith("EXECUTE_SUBGOAL["))
        self.assertEqual(post.call_count, 3)

    @patch("llm.http_backend.requests.post")
    def test_retries_are_bounded(self, post):
        post.return_value = _response(503)
        with self.assertRaises(BackendUnavailable):
            self.backend.complete(_request())
        self.assertEqual(post.call_count, 3)

    @patch("llm.http_backend.requests.post")
    def test_client_errors_are_not_retried(self, post):
        post.return_value = _response(401, {"error": "bad key"})
        with self.assertRaises(BackendUnavailable):
            self.backend.complete(_request())
        self.assertEqual(post.call_count, 1)

    @patch("llm.http_backend.requests.post")
    def test_missing_usage_is_approximated(self, post):
        post.return_value = _response(200, {"choices": [{"message": {"content": "a b c"}}]})
        completion = self.backend.complete(_request())
        self.assertEqual(completion.completion_tokens, 3)
        self.assertEqual(completion.prompt_tokens, 3)

    @patch("llm.http_backend.requests.post")
    def test_unexpected_shape(self, post):
        post.return_value = _response(200, {"choices": []})
        with self.assertRaises(BackendUnavailable):
            self.backend.complete(_request())

    @patch.dict(os.environ, {"DUET_API_BASE": "http://env.local/v1", "DUET_MODEL": "env-model"})
    def test_environment_overrides_config(self):
        backend = HttpBackend.from_config({"base_url": "http://file.local", "model": "file-model", "timeout": 5})
        self.assertEqual(backend.base_url, "http://env.local/v1")
        self.assertEqual(backend.model, "env-model")
        self.assertEqual(backend.timeout, 5)


class OracleBackendTests(unittest.TestCase):
    def test_unsupported_domains(self):
        with self.assertRaises(OracleUnsupported):
            OracleBackend().bind(envs.get("household-picktwo-soapbar"))
        with self.assertRaises(GatewayError):
            OracleBackend().complete(_request())

    def test_plan_then_actions(self):
        env = envs.get("gripper-two-balls")
        oracle = OracleBackend()
        oracle.bind(env)
        plan = oracle.complete(_request("planner")).text
        self.assertIn("FULL PLAN", plan)
        self.assertIn("EXECUTE_SUBGOAL[\n  DESC: Pick up ball1 in room1 with the left gripper\n]", plan)

        instance = user("Your Assigned Subgoal: Pick up ball1 in room1 with the left gripper\n")
        first = oracle.complete(ChatRequest((system("s"), instance), "actor")).text
        self.assertIn("```\npick(ball1,room1,left)\n```", first)
        second = oracle.complete(ChatRequest((system("s"), instance, assistant(first), user("ok")), "actor")).text
        self.assertIn("SUBGOAL COMPLETED", second)

    def test_shortest_blocksworld_plan(self):
        env = envs.get("blocksworld-tower4")
        oracle = OracleBackend()
        oracle.bind(env)
        plan = oracle.complete(_request("planner")).text
        self.assertIn("The shortest plan needs 8 actions in 4 subgoals.", plan)

    def test_solved_state_completes(self):
        env = envs.get("gripper-two-balls")
        for action in ("pick(ball1,room1,left)", "pick(ball2,room1,right)", "move(room1,room2)",
                       "drop(ball1,room2,left)", "drop(ball2,room2,right)"):
            env.step(action)
        oracle = OracleBackend()
        oracle.bind(env)
        self.assertIn("TASK COMPLETE", oracle.complete(_request("planner")).text)

    def test_verification_and_synthesis(self):
        env = envs.get("blocksworld-tower4")
        oracle = OracleBackend()
        oracle.bind(env)
        errors = oracle.complete(_request("verification", user(
            f"QUESTION: Were there any errors?\n> pickup(b1)\n{envs.INVALID_ACTION}"))).text
        self.assertIn("ANSWER (e.g., Yes/No/Uncertain/Value): Yes", errors)
        facts = oracle.complete(_request("verification", user("QUESTION: Which new facts or errors?"))).text
        self.assertIn(": None", facts)
        synthesis = json.loads(oracle.complete(_request("synthesis")).text)
        self.assertEqual(synthesis["status_line"], "Status: 0 of 6 checkpoints reached.")
        self.assertEqual(synthesis["learned_facts"], [])

    def verification_answers(self, oracle, subgoal, trace=""):
        answers = []
        for question in QUESTIONS:
            content = llm.render("verification_instance",
                                 context=f"Subgoal: {subgoal}\n\nExecution Trace:\n{trace}",
                                 question=question.replace("<<subgoal>>", subgoal))
            text = oracle.complete(_request("verification", user(content))).text
            answers.append(parse_answer(text)[0])
        return answers

    def test_verification_follows_the_ground_state(self):
        env = envs.get("gripper-two-balls")
        oracle = OracleBackend()
        oracle.bind(env)
        oracle.complete(_request("planner"))
        subgoal = "Pick up ball1 in room1 with the left gripper"

        self.assertEqual(self.verification_answers(oracle, subgoal, f"> pick(ball1,room2,left)\n{envs.INVALID_ACTION}"),
                         ["No", "None", "Yes", "Yes", "No"])

        env.step("pick(ball1,room1,left)")
        self.assertEqual(self.verification_answers(oracle, subgoal), ["Yes", "None", "No", "Yes", "Yes"])
        self.assertEqual(self.verification_answers(oracle, "Juggle the balls"),
                         ["Uncertain", "None", "No", "Uncertain", "Uncertain"])


@unittest.skipUnless(os.getenv("DUET_API_BASE"), "DUET_API_BASE is not set")
class LiveEndpointTests(unittest.TestCase):
    def test_round_trip(self):
        backend = HttpBackend.from_config({"max_retries": 1})
        completion = Gateway(backend).complete(_request("planner", user("Reply with the single word: ready")))
        self.assertTrue(completion.text.strip())


if __name__ == "__main__":
    unittest.main()
