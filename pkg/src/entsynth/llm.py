"""Prompt construction and chat-completion transport for the LLM proposer.

The prompt pair frames the model as an entanglement engineer editing a
gate-list of tuples; an optional score-change sentence gives gain/loss
feedback from the previous step. Transport speaks the common
chat-completions HTTP shape and works against any compatible endpoint.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import requests

from .circuits import GATE_KINDS, AngleSet
from .dsl import format_angle, serialize
from .proposers import ProposalContext, ProposalOutcome, parse_proposal

IMPROVEMENT_THRESHOLD = 0.005

DEFAULT_TEMPERATURE = 0.7
DEFAULT_TIMEOUT = 60.0
DEFAULT_MAX_RETRIES = 3
DEFAULT_RETRY_BACKOFF = 1.0

ENV_API_KEY = "LLM_API_KEY"
ENV_BASE_URL = "LLM_BASE_URL"
ENV_MODEL = "LLM_MODEL"


class TransportError(RuntimeError):
    """Network failure or retry budget exhausted."""


class ProtocolError(RuntimeError):
    """Endpoint answered, but not with a usable chat completion."""


def format_feedback(delta_q: float) -> str:
    """Render the score change as the gain/loss feedback sentence.

    Changes smaller than 0.005 in magnitude read as essentially no change;
    the magnitude is rounded to 2 decimals.
    """
    magnitude = f"{abs(delta_q):.2f}"
    if delta_q >= IMPROVEMENT_THRESHOLD:
        return (f"You obtained an improvement of about +{magnitude} "
                f"in the MW measure.")
    if delta_q <= -IMPROVEMENT_THRESHOLD:
        return f"You obtained a loss of about -{magnitude} in the MW measure."
    return "You obtained essentially no change in the MW measure."


@dataclass(frozen=True)
class PromptPair:
    """System and user messages for one proposal request."""

    system: str
    user: str


def _gate_set_text() -> str:
    return "{" + ", ".join(GATE_KINDS) + "}"


def _angle_set_text(angles: AngleSet) -> str:
    return "{" + ",".join(format_angle(a) for a in angles) + "}"


def _angle_list_text(angles: AngleSet) -> str:
    return ", ".join(format_angle(a) for a in angles)


def build_prompt(context: ProposalContext, feedback_enabled: bool) -> PromptPair:
    """Fill the prompt template from the context; pure and deterministic.

    The feedback sentence appears only when enabled and a previous step
    exists (delta_q is not None).
    """
    gates = serialize(context.current_circuit)
    gate_set = _gate_set_text()
    angle_set = _angle_set_text(context.allowed_angles)
    angle_list = _angle_list_text(context.allowed_angles)
    top_wire = context.current_circuit.num_qubits - 1
    system = (
        "You are an expert in PennyLane circuits and entanglement. "
        f"Modify each tuple using only gates from {gate_set}. "
        f"Use angles from {angle_set} for the RY gate. "
        "Use ASCII only."
        "The evaluation metric of the circuit's performance is the "
        "Meyer-Wallach global entanglement."
    )
    feedback_part = ""
    if feedback_enabled and context.delta_q is not None:
        feedback_part = " " + format_feedback(context.delta_q)
    user = (
        "You are given a quantum circuit list of tuples. "
        "GOAL: Think step-by-step, you want to improve the Meyer Wallach "
        "entanglement of the new state you create by modifying the list "
        f"{gates}.{feedback_part} "
        f"Allowed gates: {gate_set}. "
        "   Transform the circuit substantially, not minimally. Do NOT "
        "produce minor edits to the previous version-aim for creative leaps."
        "Think step-by-step, like an experimental quantum designer: search "
        "for surprising, high-entanglement patterns by creatively reshaping "
        "the circuit architecture."
        "Do NOT add explanations, comments or code fences. "
        "Everything between <python> and </python> must be a valid LIST."
        "Each gate must be one of:"
        "  ['H', [wire]]"
        "  ['RY', [angle, wire]]"
        "  ['CNOT', [control-wire, target-wire]]"
        f"Where wire is an integer from 0 to {top_wire} and angle is one of "
        f"{angle_list}. "
        "  IMPORTANT: do not add or remove gates, only modify existing ones."
    )
    return PromptPair(system=system, user=user)


@dataclass(frozen=True)
class LlmParams:
    """Connection and decoding parameters for the chat-completion endpoint."""

    base_url: str
    model: str
    temperature: float = DEFAULT_TEMPERATURE
    timeout: float = DEFAULT_TIMEOUT
    max_retries: int = DEFAULT_MAX_RETRIES
    retry_backoff: float = DEFAULT_RETRY_BACKOFF
    api_key: str | None = None

    def __post_init__(self):
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")


def params_from_env(base_url: str | None = None, model: str | None = None,
                    api_key: str | None = None, **overrides) -> LlmParams:
    """Build LlmParams from LLM_BASE_URL / LLM_MODEL / LLM_API_KEY.

    Explicit arguments win over the environment.
    """
    base_url = base_url or os.environ.get(ENV_BASE_URL)
    model = model or os.environ.get(ENV_MODEL)
    api_key = api_key or os.environ.get(ENV_API_KEY)
    if not base_url:
        raise ValueError(f"no endpoint: pass base_url or set {ENV_BASE_URL}")
    if not model:
        raise ValueError(f"no model: pass model or set {ENV_MODEL}")
    return LlmParams(base_url=base_url, model=model, api_key=api_key,
                     **overrides)


def _extract_text(payload) -> str:
    try:
        text = payload["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise ProtocolError(f"response body lacks choices[0].message.content: "
                            f"{exc!r}") from exc
    if not isinstance(text, str):
        raise ProtocolError("assistant content is not a string")
    return text


def complete(prompt: PromptPair, params: LlmParams,
             session: requests.Session | None = None) -> str:
    """Issue one chat-completion request and return the assistant text.

    Retries transport failures and 5xx responses with exponential backoff
    up to max_retries; 4xx and malformed bodies raise ProtocolError at once.
    """
    url = params.base_url.rstrip("/") + "/chat/completions"
    headers = {"Content-Type": "application/json"}
    if params.api_key:
        headers["Authorization"] = f"Bearer {params.api_key}"
    body = {
        "model": params.model,
        "messages": [
            {"role": "system", "content": prompt.system},
            {"role": "user", "content": prompt.user},
        ],
        "temperature": params.temperature,
    }
    post = session.post if session is not None else requests.post
    last_error: Exception | None = None
    for attempt in range(params.max_retries + 1):
        if attempt:
            time.sleep(params.retry_backoff * 2 ** (attempt - 1))
        try:
            response = post(url, json=body, headers=headers,
                            timeout=params.timeout)
        except requests.RequestException as exc:
            last_error = exc
            continue
        if response.status_code >= 500:
            last_error = TransportError(
                f"server error {response.status_code}")
            continue
        if response.status_code >= 400:
            raise ProtocolError(
                f"endpoint rejected the request: {response.status_code} "
                f"{response.text[:200]}")
        try:
            payload = response.json()
        except ValueError as exc:
            raise ProtocolError(f"response is not JSON: {exc}") from exc
        return _extract_text(payload)
    raise TransportError(
        f"no response after {params.max_retries + 1} attempt(s): {last_error}")


@dataclass
class LlmProposer:
    """Proposer backed by a chat-completion endpoint."""

    params: LlmParams
    feedback_enabled: bool = True
    session: requests.Session | None = field(default=None, repr=False)

    @property
    def proposer_id(self) -> str:
        return f"llm:{self.params.model}"

    def propose(self, context: ProposalContext) -> ProposalOutcome:
        prompt = build_prompt(context, self.feedback_enabled)
        start = time.perf_counter()
        try:
            raw_text = complete(prompt, self.params, self.session)
        except (TransportError, ProtocolError) as exc:
            return ProposalOutcome("", exc, time.perf_counter() - start,
                                   self.proposer_id)
        parsed = parse_proposal(raw_text, context.current_circuit.num_qubits)
        return ProposalOutcome(raw_text, parsed, time.perf_counter() - start,
                               self.proposer_id)
