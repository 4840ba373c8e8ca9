"""Reference operational semantics as an explicit control-flow machine.

Loops run on a phase ring (condition, body, update) with an entry point,
selection runs as a branch-chain driver, and every decision point is a
named hook slot.  The reference hooks reproduce standard semantics; the
variant engine installs replacements to simulate specific mental models.
Every run yields a transcript (printed lines), an event trace, and a
termination status; runaway executions are cut off by configurable caps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from . import minilang as ml

# Named decision points a variant may override.  A semantic profile may
# bind each slot at most once.
HOOK_SLOTS = frozenset(
    [
        "sel.branch_select",
        "sel.body_extent",
        "sel.post",
        "sel.repeat",
        "sel.trigger",
        "sel.cond_eval",
        "sel.nesting",
        "loop.entry_order",
        "loop.cycle_order",
        "loop.phase_skip",
        "loop.cond_semantics",
        "loop.cond_eval",
        "loop.body_extent",
        "loop.body_schedule",
        "loop.update_semantics",
        "loop.state_view",
        "loop.post",
        "loop.nesting",
        "jump.break",
        "jump.continue",
    ]
)

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

STATUS_COMPLETED = "completed"
STATUS_STEP_CAP = "step_cap"
STATUS_OUTPUT_CAP = "output_cap"
STATUS_HALTED = "halted_by_variant"
STATUS_RUNTIME_ERROR = "runtime_error"
# Internal to diagnosis: a run cut short because its transcript already
# deviated from an expected prefix.  Never a reportable outcome.
STATUS_PREFIX_MISMATCH = "prefix_mismatch"


@dataclass(frozen=True, slots=True)
class Limits:
    max_events: int = 10_000
    max_outputs: int = 1_000


@dataclass(frozen=True, slots=True)
class Event:
    seq: int
    node_id: int
    kind: str
    payload: dict


@dataclass(frozen=True, slots=True)
class ExecResult:
    transcript: tuple[str, ...]
    trace: tuple[Event, ...]
    status: str
    error: Optional[str] = None


class RuntimeFault(Exception):
    """A runtime error in the simulated program (not in the machine)."""

    KINDS = frozenset(["uninitialized-read", "div-by-zero", "overflow", "type-error"])

    def __init__(self, kind: str, message: str):
        assert kind in self.KINDS
        super().__init__(message)
        self.kind = kind


class StaleSnapshotError(Exception):
    """Restore/discard called with a token that is no longer live."""


# Internal control-flow signals.
class _Break(Exception):
    pass


class _Continue(Exception):
    pass


class _Restart(Exception):
    pass


class _Halt(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class _Cap(Exception):
    def __init__(self, status: str):
        super().__init__(status)
        self.status = status


class _PrefixMismatch(Exception):
    pass


Value = Union[int, bool]


def truthy(v: Value) -> bool:
    """Condition coercion: booleans stand, integers are true when nonzero."""
    if type(v) is bool:
        return v
    return v != 0


def render_value(v: Value) -> str:
    if type(v) is bool:
        return "true" if v else "false"
    return str(v)


def _require_int(v: Value, context: str) -> int:
    if type(v) is bool:
        raise RuntimeFault("type-error", f"{context} requires an integer, got a boolean")
    return v


def _check_range(v: int) -> int:
    if v < INT_MIN or v > INT_MAX:
        raise RuntimeFault("overflow", "integer result out of 64-bit range")
    return v


def apply_binop(op: str, left: Value, right: Value) -> Value:
    if op in ("+", "-", "*"):
        a = _require_int(left, f"'{op}'")
        b = _require_int(right, f"'{op}'")
        if op == "+":
            return _check_range(a + b)
        if op == "-":
            return _check_range(a - b)
        return _check_range(a * b)
    if op in ("/", "%"):
        a = _require_int(left, f"'{op}'")
        b = _require_int(right, f"'{op}'")
        if b == 0:
            raise RuntimeFault("div-by-zero", "division or modulo by zero")
        q = a // b
        if q < 0 and q * b != a:
            q += 1  # C-style truncation toward zero
        if op == "/":
            return _check_range(q)
        return a - q * b
    if op in ("<", "<=", ">", ">="):
        a = _require_int(left, f"'{op}'")
        b = _require_int(right, f"'{op}'")
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
    if op in ("==", "!="):
        if type(left) is not type(right):
            raise RuntimeFault("type-error", f"'{op}' requires operands of the same type")
        return (left == right) if op == "==" else (left != right)
    raise AssertionError(f"unknown operator {op}")


def eval_core(
    expr: ml.Expr,
    read: Callable[[str], Value],
    op_map: Optional[dict[str, str]] = None,
) -> Value:
    """Evaluate an expression against a variable reader.

    ``op_map`` substitutes binary operators before application; it exists
    for condition-misreading variants (for example swapping ``<`` and
    ``<=``).  Evaluation is strict except for short-circuiting ``&&`` and
    ``||``.
    """
    if isinstance(expr, ml.IntLit):
        return _check_range(expr.value)
    if isinstance(expr, ml.BoolLit):
        return expr.value
    if isinstance(expr, ml.Var):
        return read(expr.name)
    if isinstance(expr, ml.Unary):
        if expr.op == "!":
            return not truthy(eval_core(expr.operand, read, op_map))
        v = _require_int(eval_core(expr.operand, read, op_map), "unary '-'")
        return _check_range(-v)
    if isinstance(expr, ml.Binary):
        op = expr.op
        if op_map is not None:
            op = op_map.get(op, op)
        if op == "&&":
            if not truthy(eval_core(expr.left, read, op_map)):
                return False
            return truthy(eval_core(expr.right, read, op_map))
        if op == "||":
            if truthy(eval_core(expr.left, read, op_map)):
                return True
            return truthy(eval_core(expr.right, read, op_map))
        left = eval_core(expr.left, read, op_map)
        right = eval_core(expr.right, read, op_map)
        return apply_binop(op, left, right)
    raise TypeError(f"cannot evaluate {expr!r}")


class State:
    """A flat variable environment with a LIFO snapshot discipline."""

    def __init__(self) -> None:
        self.vars: dict[str, Value] = {}

    def read(self, name: str) -> Value:
        if name not in self.vars:
            raise RuntimeFault("uninitialized-read", f"read of unbound variable '{name}'")
        return self.vars[name]

    def write(self, name: str, value: Value) -> None:
        self.vars[name] = value


def eval_expr(expr: ml.Expr, state: State) -> Value:
    """Standalone expression evaluation against a plain environment."""
    return eval_core(expr, state.read)


# ---------------------------------------------------------------------------
# Hook interfaces (reference behavior)
# ---------------------------------------------------------------------------

class BranchSelectHook:
    """sel.branch_select: which branch bodies of an if-chain run."""

    def select(self, m: "Machine", node: ml.If):
        for i in range(len(node.branches)):
            if m.try_branch(node, i):
                return i
        if node.else_body is not None:
            m.exec_else(node)
            return "else"
        return None


class SelCondEvalHook:
    """sel.cond_eval: how a single branch relates to its condition."""

    def try_branch(self, m: "Machine", node: ml.If, index: int) -> bool:
        v = m.eval_if_cond(node, index)
        if truthy(v):
            m.exec_branch_body(node, index)
            return True
        return False


class SelPostHook:
    """sel.post: what happens after a selection statement finishes."""

    def after_if(self, m: "Machine", node: ml.If, taken) -> None:
        pass


class SelRepeatHook:
    """sel.repeat: how many times the whole statement executes."""

    def run(self, m: "Machine", node: ml.If) -> None:
        m.run_if_once(node)


class SelTriggerHook:
    """sel.trigger: condition watched outside the statement's position.

    Only installed by variants; ``None`` means absent.  Watcher variants
    take over simple (single-branch, else-less) ifs completely.
    """

    def on_run_start(self, m: "Machine") -> None:
        pass

    def handles(self, node: ml.If) -> bool:
        return False

    def at_statement(self, m: "Machine", node: ml.If) -> None:
        raise NotImplementedError

    def after_statement(self, m: "Machine") -> None:
        pass

    def capture(self) -> object:
        return None

    def restore(self, snap: object) -> None:
        pass


class LoopEntryHook:
    """loop.entry_order: where execution enters the phase ring."""

    skip_init = False
    init_replaces_first_update = False
    one_pass = False

    def entry_phase(self, act: "Activation") -> str:
        return "body" if act.kind == "do-while" else "cond"


class LoopCycleHook:
    """loop.cycle_order: phase order within one iteration."""

    one_pass = False

    def ring(self, act: "Activation") -> tuple[str, ...]:
        return ("cond", "body", "update")


class PhaseSkipHook:
    """loop.phase_skip: phases omitted entirely."""

    skip: frozenset[str] = frozenset()


class CondSemHook:
    """loop.cond_semantics: what a condition value means for the cycle.

    ``decide`` returns "continue", "exit", "continue-skip-body", or
    ("extra", k) to request k uncondition-checked iterations before exit.
    Per-activation state goes in ``act.cond_state``.
    """

    recheck_during_body = False

    def decide(self, m: "Machine", act: "Activation", value: bool):
        return "continue" if value else "exit"


class LoopCondEvalHook:
    """loop.cond_eval: operator substitutions inside loop conditions."""

    op_map: Optional[dict[str, str]] = None


class BodyScheduleHook:
    """loop.body_schedule: a replacement driver for qualifying loops.

    ``drive`` returns an exit kind ("normal"/"break") when it handled the
    loop, or None to fall through to the generic driver.
    """

    def drive(self, m: "Machine", act: "Activation") -> Optional[str]:
        return None


class UpdateSemHook:
    """loop.update_semantics: how the header update applies."""

    def apply(self, m: "Machine", act: "Activation") -> None:
        assert act.update is not None
        m.exec_simple(act.update)


class Overlay:
    """A per-activation view over the variable environment."""

    def read(self, name: str, phase: str):
        return False, None

    def write(self, name: str, value: Value, phase: str) -> bool:
        return False

    def on_exit(self, m: "Machine") -> None:
        pass

    def capture(self) -> object:
        return None

    def restore(self, snap: object) -> None:
        pass


class StateViewHook:
    """loop.state_view: installs an Overlay when a loop activates."""

    def make_overlay(self, m: "Machine", act: "Activation") -> Optional[Overlay]:
        return None


class LoopPostHook:
    """loop.post: behavior at condition-driven exit and after the loop."""

    def on_cond_exit(self, m: "Machine", act: "Activation") -> str:
        return "exit"

    def after_loop(self, m: "Machine", act: "Activation", exit_kind: str) -> None:
        pass


class LoopNestHook:
    """loop.nesting: runtime behavior of nested-loop constellations."""

    def drive(self, m: "Machine", act: "Activation") -> Optional[str]:
        return None

    def after_exit(self, m: "Machine", act: "Activation", exit_kind: str) -> None:
        pass


class JumpHook:
    """jump.break / jump.continue: what the statement does."""

    def __init__(self, stmt_kind: str):
        self.stmt_kind = stmt_kind

    def effect(self, m: "Machine", node) -> None:
        m.emit(node.node_id, "jump", stmt=self.stmt_kind, effect=self.stmt_kind)
        raise (_Break if self.stmt_kind == "break" else _Continue)()


@dataclass
class Hooks:
    branch_select: BranchSelectHook = field(default_factory=BranchSelectHook)
    sel_cond_eval: SelCondEvalHook = field(default_factory=SelCondEvalHook)
    sel_post: SelPostHook = field(default_factory=SelPostHook)
    sel_repeat: SelRepeatHook = field(default_factory=SelRepeatHook)
    sel_trigger: Optional[SelTriggerHook] = None
    loop_entry: LoopEntryHook = field(default_factory=LoopEntryHook)
    loop_cycle: LoopCycleHook = field(default_factory=LoopCycleHook)
    loop_phase_skip: PhaseSkipHook = field(default_factory=PhaseSkipHook)
    loop_cond_sem: CondSemHook = field(default_factory=CondSemHook)
    loop_cond_eval: LoopCondEvalHook = field(default_factory=LoopCondEvalHook)
    loop_body_schedule: Optional[BodyScheduleHook] = None
    loop_update_sem: UpdateSemHook = field(default_factory=UpdateSemHook)
    loop_state_view: Optional[StateViewHook] = None
    loop_post: LoopPostHook = field(default_factory=LoopPostHook)
    loop_nest: Optional[LoopNestHook] = None
    on_break: JumpHook = field(default_factory=lambda: JumpHook("break"))
    on_continue: JumpHook = field(default_factory=lambda: JumpHook("continue"))

    @staticmethod
    def reference() -> "Hooks":
        return Hooks()


# ---------------------------------------------------------------------------
# Loop activations
# ---------------------------------------------------------------------------

class Activation:
    """One dynamic execution of a loop node."""

    __slots__ = (
        "node", "kind", "init", "cond", "update", "body_stmts",
        "control_var", "phase", "overlay", "update_count", "body_runs",
        "first_cond", "skip_body_once", "deferred_init_done", "cond_state",
    )

    def __init__(self, node: ml.Stmt):
        self.node = node
        if isinstance(node, ml.While):
            self.kind = "while"
            self.init, self.cond, self.update = None, node.cond, None
        elif isinstance(node, ml.DoWhile):
            self.kind = "do-while"
            self.init, self.cond, self.update = None, node.cond, None
        elif isinstance(node, ml.For):
            self.kind = "for"
            self.init, self.cond, self.update = node.init, node.cond, node.update
        else:
            raise TypeError(f"not a loop: {node!r}")
        self.body_stmts = node.body.statements
        self.control_var = self._find_control_var()
        self.phase = "init"
        self.overlay: Optional[Overlay] = None
        self.update_count = 0
        self.body_runs = 0
        self.first_cond: Optional[bool] = None
        self.skip_body_once = False
        self.deferred_init_done = False
        self.cond_state: dict = {}

    def _find_control_var(self) -> Optional[str]:
        if self.kind != "for":
            return None
        if self.update is not None:
            return self.update.target
        if self.init is not None:
            return self.init.target
        return None

    def capture(self) -> tuple:
        overlay_snap = self.overlay.capture() if self.overlay is not None else None
        return (
            self.update_count, self.body_runs, self.first_cond,
            self.skip_body_once, self.deferred_init_done,
            dict(self.cond_state), overlay_snap,
        )

    def restore(self, snap: tuple) -> None:
        (
            self.update_count, self.body_runs, self.first_cond,
            self.skip_body_once, self.deferred_init_done,
            cond_state, overlay_snap,
        ) = snap
        self.cond_state = dict(cond_state)
        if self.overlay is not None:
            self.overlay.restore(overlay_snap)


@dataclass(frozen=True, slots=True)
class SnapshotToken:
    depth: int
    vars: dict
    transcript_len: int
    act_snaps: tuple
    trigger_snap: object


_CANONICAL_PHASES = ("cond", "body", "update")


# ---------------------------------------------------------------------------
# The machine
# ---------------------------------------------------------------------------

class Machine:
    """Executes one program under a hook table, within limits."""

    def __init__(
        self,
        program: ml.Program,
        limits: Optional[Limits] = None,
        hooks: Optional[Hooks] = None,
        expected_prefix: Optional[tuple[str, ...]] = None,
        expected_exact_length: bool = False,
    ):
        self.program = program
        self.limits = limits or Limits()
        self.hooks = hooks or Hooks.reference()
        self.state = State()
        self.trace: list[Event] = []
        self.transcript: list[str] = []
        self.activations: list[Activation] = []
        self.loop_body_depth = 0
        self.suppress_output_depth = 0
        self._snap_stack: list[SnapshotToken] = []
        self._contains_loop_cache: dict[int, bool] = {}
        self._following = _following_map(program)
        self._expected = expected_prefix
        self._expected_exact = expected_exact_length

    # --- events, output, variables ---

    def emit(self, node_id: int, kind: str, **payload) -> None:
        self.trace.append(Event(len(self.trace), node_id, kind, payload))
        if len(self.trace) >= self.limits.max_events:
            raise _Cap(STATUS_STEP_CAP)

    def _emit_final(self, node_id: int, kind: str, **payload) -> None:
        # Terminal bookkeeping event; never pushes the trace over its cap.
        if len(self.trace) < self.limits.max_events:
            self.trace.append(Event(len(self.trace), node_id, kind, payload))

    def output(self, node_id: int, text: str) -> None:
        shadow = self.suppress_output_depth > 0
        if shadow:
            self.emit(node_id, "output", text=text, shadow=True)
            return
        self.emit(node_id, "output", text=text)
        self.transcript.append(text)
        if self._expected is not None:
            i = len(self.transcript) - 1
            if i >= len(self._expected):
                if self._expected_exact:
                    raise _PrefixMismatch()
            elif self._expected[i] != text:
                raise _PrefixMismatch()
        if len(self.transcript) >= self.limits.max_outputs:
            raise _Cap(STATUS_OUTPUT_CAP)

    def halt(self, node_id: int, reason: str) -> None:
        self._emit_final(node_id, "halt", reason=reason)
        raise _Halt(reason)

    def read_var(self, name: str) -> Value:
        for act in reversed(self.activations):
            ov = act.overlay
            if ov is not None:
                handled, value = ov.read(name, act.phase)
                if handled:
                    return value
        return self.state.read(name)

    def write_var(self, name: str, value: Value, node_id: int) -> None:
        self.emit(node_id, "write", name=name, value=value)
        self.write_var_silent(name, value)

    def write_var_silent(self, name: str, value: Value) -> None:
        for act in reversed(self.activations):
            ov = act.overlay
            if ov is not None and ov.write(name, value, act.phase):
                return
        self.state.write(name, value)

    def eval(self, expr: ml.Expr, op_map: Optional[dict[str, str]] = None) -> Value:
        return eval_core(expr, self.read_var, op_map)

    @property
    def in_loop_body(self) -> bool:
        return self.loop_body_depth > 0

    def following_statement(self, node_id: int) -> Optional[ml.Stmt]:
        return self._following.get(node_id)

    # --- snapshots ---

    def snapshot(self) -> SnapshotToken:
        trig = self.hooks.sel_trigger
        token = SnapshotToken(
            depth=len(self._snap_stack),
            vars=dict(self.state.vars),
            transcript_len=len(self.transcript),
            act_snaps=tuple((act, act.capture()) for act in self.activations),
            trigger_snap=trig.capture() if trig is not None else None,
        )
        self._snap_stack.append(token)
        return token

    def _pop_to(self, token: SnapshotToken) -> None:
        if token not in self._snap_stack:
            raise StaleSnapshotError("snapshot token is no longer live")
        while self._snap_stack[-1] is not token:
            self._snap_stack.pop()
        self._snap_stack.pop()

    def restore(self, token: SnapshotToken, node_id: int = -1) -> None:
        """Roll variables, overlays, and the transcript back to the token."""
        self._pop_to(token)
        self.state.vars = dict(token.vars)
        del self.transcript[token.transcript_len :]
        for act, snap in token.act_snaps:
            act.restore(snap)
        trig = self.hooks.sel_trigger
        if trig is not None:
            trig.restore(token.trigger_snap)
        self.emit(node_id, "rolledback", to_output=token.transcript_len)

    def discard(self, token: SnapshotToken) -> None:
        """Commit speculative work: forget the token without restoring."""
        self._pop_to(token)

    # --- top level ---

    def run(self) -> ExecResult:
        trig = self.hooks.sel_trigger
        if trig is not None:
            trig.on_run_start(self)
        status = STATUS_COMPLETED
        error: Optional[str] = None
        try:
            while True:
                try:
                    for stmt in self.program.statements:
                        self.exec_stmt(stmt)
                    break
                except _Restart:
                    self._snap_stack.clear()
                    continue
        except _Cap as cap:
            status = cap.status
        except _Halt:
            status = STATUS_HALTED
        except (_Break, _Continue) as sig:
            kind = "break" if isinstance(sig, _Break) else "continue"
            self._emit_final(-1, "halt", reason=f"{kind}-outside-loop")
            status = STATUS_HALTED
        except RuntimeFault as fault:
            self._emit_final(-1, "halt", reason=fault.kind)
            status = STATUS_RUNTIME_ERROR
            error = fault.kind
        except _PrefixMismatch:
            status = STATUS_PREFIX_MISMATCH
        return ExecResult(tuple(self.transcript), tuple(self.trace), status, error)

    # --- statements ---

    def exec_stmt(self, stmt: ml.Stmt) -> None:
        self._dispatch(stmt)
        trig = self.hooks.sel_trigger
        if trig is not None:
            trig.after_statement(self)

    def _dispatch(self, stmt: ml.Stmt) -> None:
        if isinstance(stmt, (ml.Assign, ml.IncDec)):
            self.exec_simple(stmt)
        elif isinstance(stmt, ml.Print):
            parts = []
            for arg in stmt.args:
                if isinstance(arg, ml.StringLit):
                    parts.append(arg.value)
                else:
                    parts.append(render_value(self.eval(arg)))
            self.output(stmt.node_id, " ".join(parts))
        elif isinstance(stmt, ml.If):
            self.exec_if(stmt)
        elif isinstance(stmt, ml.LOOP_TYPES):
            self.exec_loop(stmt)
        elif isinstance(stmt, ml.Break):
            self.hooks.on_break.effect(self, stmt)
        elif isinstance(stmt, ml.Continue):
            self.hooks.on_continue.effect(self, stmt)
        elif isinstance(stmt, ml.Block):
            for s in stmt.statements:
                self.exec_stmt(s)
        else:
            raise TypeError(f"unknown statement {stmt!r}")

    def exec_simple(self, stmt: ml.SimpleStmt) -> None:
        if isinstance(stmt, ml.Assign):
            if stmt.op == "=":
                value = self.eval(stmt.value)
            else:
                current = self.read_var(stmt.target)
                rhs = self.eval(stmt.value)
                value = apply_binop(stmt.op[0], current, rhs)
            self.write_var(stmt.target, value, stmt.node_id)
        else:
            current = _require_int(self.read_var(stmt.target), f"'{stmt.op}'")
            delta = 1 if stmt.op == "++" else -1
            self.write_var(stmt.target, _check_range(current + delta), stmt.node_id)

    # --- selection ---

    def exec_if(self, node: ml.If) -> None:
        trig = self.hooks.sel_trigger
        if trig is not None and trig.handles(node):
            trig.at_statement(self, node)
            return
        self.hooks.sel_repeat.run(self, node)

    def run_if_once(self, node: ml.If):
        taken = self.hooks.branch_select.select(self, node)
        self.hooks.sel_post.after_if(self, node, taken)
        return taken

    def eval_if_cond(self, node: ml.If, index: int) -> Value:
        v = self.eval(node.branches[index].cond)
        self.emit(node.node_id, "cond", value=truthy(v), branch=index)
        return v

    def try_branch(self, node: ml.If, index: int) -> bool:
        return self.hooks.sel_cond_eval.try_branch(self, node, index)

    def exec_branch_body(self, node: ml.If, index: int) -> None:
        self.emit(node.node_id, "branch", branch=index)
        for s in node.branches[index].body.statements:
            self.exec_stmt(s)

    def exec_else(self, node: ml.If) -> None:
        assert node.else_body is not None
        self.emit(node.node_id, "branch", branch="else")
        for s in node.else_body.statements:
            self.exec_stmt(s)

    # --- loops ---

    def node_contains_loop(self, node: ml.Stmt) -> bool:
        nid = node.node_id
        cached = self._contains_loop_cache.get(nid)
        if cached is None:
            cached = any(
                isinstance(s, ml.LOOP_TYPES) for s in ml._descendants(node)
            )
            self._contains_loop_cache[nid] = cached
        return cached

    def exec_loop(self, node: ml.Stmt) -> None:
        act = Activation(node)
        self.activations.append(act)
        try:
            exit_kind = self._drive_loop(act)
        finally:
            self.activations.pop()
        if act.overlay is not None:
            act.overlay.on_exit(self)
        self.hooks.loop_post.after_loop(self, act, exit_kind)
        nest = self.hooks.loop_nest
        if nest is not None:
            nest.after_exit(self, act, exit_kind)

    def _drive_loop(self, act: Activation) -> str:
        nest = self.hooks.loop_nest
        if nest is not None:
            handled = nest.drive(self, act)
            if handled is not None:
                return handled
        sched = self.hooks.loop_body_schedule
        if sched is not None:
            handled = sched.drive(self, act)
            if handled is not None:
                return handled
        if self.hooks.loop_entry.one_pass or self.hooks.loop_cycle.one_pass:
            return self.one_pass_loop(act)
        return self.generic_loop(act)

    def loop_prologue(self, act: Activation) -> None:
        """Run (or skip) initialization and install any state overlay."""
        entry = self.hooks.loop_entry
        skip = self.hooks.loop_phase_skip.skip
        if act.init is not None and "init" not in skip and not entry.skip_init:
            act.phase = "init"
            self.emit(act.node.node_id, "phase", phase="init")
            self.exec_simple(act.init)
        view = self.hooks.loop_state_view
        if view is not None:
            act.overlay = view.make_overlay(self, act)

    def eval_loop_cond(self, act: Activation, recheck: bool = False) -> bool:
        prev_phase = act.phase
        act.phase = "cond"
        try:
            if not recheck:
                self.emit(act.node.node_id, "phase", phase="cond")
            if act.cond is None:
                value = True
            else:
                op_map = self.hooks.loop_cond_eval.op_map
                value = truthy(self.eval(act.cond, op_map))
                payload = {"value": value}
                if recheck:
                    payload["recheck"] = True
                self.emit(act.node.node_id, "cond", **payload)
        finally:
            act.phase = prev_phase if recheck else "cond"
        if act.first_cond is None:
            act.first_cond = value
        return value

    def run_loop_body(self, act: Activation) -> Optional[str]:
        """One body pass.  Returns None, "break", or "cond-exit"."""
        act.phase = "body"
        self.emit(act.node.node_id, "phase", phase="body")
        act.body_runs += 1
        recheck = self.hooks.loop_cond_sem.recheck_during_body
        self.loop_body_depth += 1
        try:
            for stmt in act.body_stmts:
                self.exec_stmt(stmt)
                if recheck and not self.eval_loop_cond(act, recheck=True):
                    return "cond-exit"
        except _Break:
            return "break"
        except _Continue:
            return None
        finally:
            self.loop_body_depth -= 1
        return None

    def run_loop_update(self, act: Activation) -> None:
        entry = self.hooks.loop_entry
        if entry.init_replaces_first_update and not act.deferred_init_done:
            act.deferred_init_done = True
            if act.init is not None:
                act.phase = "init"
                self.emit(act.node.node_id, "phase", phase="init")
                self.exec_simple(act.init)
            return
        if act.update is None:
            return
        act.phase = "update"
        self.emit(act.node.node_id, "phase", phase="update")
        self.hooks.loop_update_sem.apply(self, act)
        act.update_count += 1

    def _build_ring(self, act: Activation) -> tuple[str, ...]:
        ring = self.hooks.loop_cycle.ring(act)
        skip = self.hooks.loop_phase_skip.skip
        filtered = tuple(p for p in ring if p not in skip)
        return filtered if filtered else ("cond",)

    @staticmethod
    def _entry_index(ring: tuple[str, ...], entry: str) -> int:
        if entry in ring:
            return ring.index(entry)
        # Skipped entry phase: start at the next canonical phase present.
        start = _CANONICAL_PHASES.index(entry)
        for off in range(1, len(_CANONICAL_PHASES) + 1):
            candidate = _CANONICAL_PHASES[(start + off) % len(_CANONICAL_PHASES)]
            if candidate in ring:
                return ring.index(candidate)
        return 0

    def generic_loop(self, act: Activation) -> str:
        self.loop_prologue(act)
        cond_sem = self.hooks.loop_cond_sem
        post = self.hooks.loop_post
        ring = self._build_ring(act)
        pos = self._entry_index(ring, self.hooks.loop_entry.entry_phase(act))
        while True:
            phase = ring[pos]
            pos = (pos + 1) % len(ring)
            if phase == "cond":
                value = self.eval_loop_cond(act)
                action = cond_sem.decide(self, act, value)
                if action == "continue":
                    continue
                if action == "continue-skip-body":
                    act.skip_body_once = True
                    continue
                if isinstance(action, tuple) and action[0] == "extra":
                    result = self._run_extra_iterations(act, ring, action[1])
                    if result == "break":
                        return "break"
                if post.on_cond_exit(self, act) == "recheck":
                    nxt = self.following_statement(act.node.node_id)
                    if nxt is not None:
                        self.exec_stmt(nxt)
                    pos = ring.index("cond")
                    continue
                return "normal"
            if phase == "body":
                if act.skip_body_once:
                    act.skip_body_once = False
                    continue
                result = self.run_loop_body(act)
                if result == "break":
                    return "break"
                if result == "cond-exit":
                    return "normal"
                continue
            self.run_loop_update(act)

    def _run_extra_iterations(self, act: Activation, ring: tuple[str, ...], count: int) -> Optional[str]:
        phases = [p for p in ring if p != "cond"]
        for _ in range(count):
            for phase in phases:
                if phase == "body":
                    result = self.run_loop_body(act)
                    if result in ("break", "cond-exit"):
                        return "break" if result == "break" else None
                else:
                    self.run_loop_update(act)
        return None

    def one_pass_loop(self, act: Activation) -> str:
        """Loop-is-if driver: init, one condition check, at most one body."""
        self.loop_prologue(act)
        skip = self.hooks.loop_phase_skip.skip
        action = "continue"
        if "cond" not in skip:
            value = self.eval_loop_cond(act)
            action = self.hooks.loop_cond_sem.decide(self, act, value)
        if action == "continue" and "body" not in skip:
            result = self.run_loop_body(act)
            if result == "break":
                return "break"
        return "normal"


def _following_map(program: ml.Program) -> dict[int, Optional[ml.Stmt]]:
    out: dict[int, Optional[ml.Stmt]] = {}
    for lst in ml.iter_statement_lists(program):
        for i, stmt in enumerate(lst):
            if isinstance(stmt, ml.LOOP_TYPES):
                out[stmt.node_id] = lst[i + 1] if i + 1 < len(lst) else None
    return out


def run_reference(program: ml.Program, limits: Optional[Limits] = None) -> ExecResult:
    """Execute a program under the correct (reference) semantics."""
    return Machine(program, limits=limits, hooks=Hooks.reference()).run()
