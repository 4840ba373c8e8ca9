"""Executable operational rules, one per misconception catalog leaf.

Each leaf is either a runtime hook (installed into a machine slot), a
structural rewrite (applied to the program before execution), or a
descriptive-only registry entry with a recorded rationale.  A semantic
profile is a conflict-free set of active leaves: no two may override the
same hook slot.  Structural rewrites run before the machine starts, in
catalog-code order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from . import exec_core as ec
from . import minilang as ml
from . import rewrites as rw
from . import taxonomy as tax
from .exec_core import (
    BodyScheduleHook,
    BranchSelectHook,
    CondSemHook,
    ExecResult,
    Hooks,
    JumpHook,
    Limits,
    LoopCondEvalHook,
    LoopCycleHook,
    LoopEntryHook,
    LoopNestHook,
    LoopPostHook,
    Machine,
    Overlay,
    PhaseSkipHook,
    RuntimeFault,
    SelCondEvalHook,
    SelPostHook,
    SelRepeatHook,
    SelTriggerHook,
    StateViewHook,
    UpdateSemHook,
    truthy,
)
from .exec_core import _Continue, _Restart  # noqa: F401  (variant control flow)


class ProfileError(Exception):
    """Invalid profile request: unknown/descriptive code, slot conflict,
    or parameter out of range."""


# ---------------------------------------------------------------------------
# Selection: branch selection variants
# ---------------------------------------------------------------------------

class AllBranchesRun(BranchSelectHook):
    """SEL.1.a.i: every branch body of the chain runs, else included."""

    def select(self, m, node):
        taken = None
        for i in range(len(node.branches)):
            m.exec_branch_body(node, i)
            taken = i
        if node.else_body is not None:
            m.exec_else(node)
            taken = "else"
        return taken


class ForcedBranch(BranchSelectHook):
    """SEL.1.a.ii: a fixed branch runs, conditions never evaluated."""

    def __init__(self, branch: str):
        self.branch = branch

    def select(self, m, node):
        if self.branch == "else":
            if node.else_body is not None:
                m.exec_else(node)
                return "else"
            return None
        index = 0 if self.branch == "then" else len(node.branches) - 1
        m.exec_branch_body(node, index)
        return index


class AllTrueBranchesRun(BranchSelectHook):
    """SEL.1.b.i: chain keeps checking after a hit; every true branch runs."""

    def select(self, m, node):
        taken = None
        for i in range(len(node.branches)):
            if m.try_branch(node, i):
                taken = i
        if taken is None and node.else_body is not None:
            m.exec_else(node)
            return "else"
        return taken


class ExitOnFirstFalse(BranchSelectHook):
    """SEL.1.b.ii: the first false condition abandons the whole chain."""

    def select(self, m, node):
        if m.try_branch(node, 0):
            return 0
        return None


class NegatedConditions(BranchSelectHook):
    """SEL.1.c: condition values are negated at selection time."""

    def select(self, m, node):
        for i in range(len(node.branches)):
            v = m.eval_if_cond(node, i)
            if not truthy(v):
                m.exec_branch_body(node, i)
                return i
        if node.else_body is not None:
            m.exec_else(node)
            return "else"
        return None


class ElseAlwaysRuns(BranchSelectHook):
    """SEL.3.c.i: the else-branch runs unconditionally; the rest is standard."""

    def select(self, m, node):
        taken = None
        for i in range(len(node.branches)):
            if m.try_branch(node, i):
                taken = i
                break
        if node.else_body is not None:
            m.exec_else(node)
            if taken is None:
                taken = "else"
        return taken


class PermutedChainOrder(BranchSelectHook):
    """SEL.4.d.i: chain conditions are checked in a permuted order."""

    def __init__(self, order: str):
        assert order == "reverse"
        self.order = order

    def select(self, m, node):
        for i in reversed(range(len(node.branches))):
            if m.try_branch(node, i):
                return i
        if node.else_body is not None:
            m.exec_else(node)
            return "else"
        return None


class RecheckForElse(BranchSelectHook):
    """SEL.4.d.ii.A: after a branch runs, its condition is re-evaluated on
    the updated state; if now false the else-branch also runs."""

    def select(self, m, node):
        for i in range(len(node.branches)):
            if m.try_branch(node, i):
                if node.else_body is not None and not truthy(m.eval_if_cond(node, i)):
                    m.exec_else(node)
                return i
        if node.else_body is not None:
            m.exec_else(node)
            return "else"
        return None


class LoopIfsUnconditional(BranchSelectHook):
    """SEL.5.b: inside a loop body, cond-guarded branches always run and
    else never does; outside loops selection is standard."""

    def select(self, m, node):
        if not m.in_loop_body:
            return super().select(m, node)
        taken = None
        for i in range(len(node.branches)):
            m.exec_branch_body(node, i)
            taken = i
        return taken


# ---------------------------------------------------------------------------
# Selection: condition evaluation variants
# ---------------------------------------------------------------------------

class HindsightCondition(SelCondEvalHook):
    """SEL.4.c.i: run the branch first, evaluate its condition on the
    resulting state, and roll everything back when it comes out false."""

    def try_branch(self, m, node, index):
        token = m.snapshot()
        m.exec_branch_body(node, index)
        if truthy(m.eval_if_cond(node, index)):
            m.discard(token)
            return True
        m.restore(token, node.node_id)
        return False


class _ShadowProbe(SelCondEvalHook):
    """Shared detection for the 'condition turns true inside the body'
    family: when the entry check is false, body statements run in shadow
    mode (state applied, output suppressed) with the condition re-checked
    after each; the subclass decides what happens at the first true point.
    A probe that never fires rolls back completely."""

    def try_branch(self, m, node, index):
        if truthy(m.eval_if_cond(node, index)):
            m.exec_branch_body(node, index)
            return True
        stmts = node.branches[index].body.statements
        token = m.snapshot()
        fire_at = None
        m.suppress_output_depth += 1
        try:
            for k, stmt in enumerate(stmts):
                m.exec_stmt(stmt)
                if truthy(m.eval_if_cond(node, index)):
                    fire_at = k + 1
                    break
        finally:
            m.suppress_output_depth -= 1
        if fire_at is None:
            m.restore(token, node.node_id)
            return False
        self.on_fire(m, node, index, token, fire_at)
        return True

    def on_fire(self, m, node, index, token, fire_at):
        raise NotImplementedError


class BodyFromTruePoint(_ShadowProbe):
    """SEL.4.c.ii.A.I: execution becomes real from the true point onward."""

    recheck_after_fire = False

    def on_fire(self, m, node, index, token, fire_at):
        m.discard(token)
        m.emit(node.node_id, "branch", branch=index, from_statement=fire_at)
        stmts = node.branches[index].body.statements
        for j, stmt in enumerate(stmts[fire_at:]):
            if self.recheck_after_fire and j > 0 and not truthy(m.eval_if_cond(node, index)):
                return
            m.exec_stmt(stmt)


class BodyWhileTrue(BodyFromTruePoint):
    """SEL.4.c.ii.A.II: as A.I, but real execution re-checks before each
    statement and leaves the branch once the condition turns false."""

    recheck_after_fire = True


class WholeBodyOnTruePoint(_ShadowProbe):
    """SEL.4.c.ii.B: the first true shadow point rolls back to branch
    entry and the whole body runs for real."""

    def on_fire(self, m, node, index, token, fire_at):
        m.restore(token, node.node_id)
        m.exec_branch_body(node, index)


# ---------------------------------------------------------------------------
# Selection: post, repeat, trigger variants
# ---------------------------------------------------------------------------

class RestartOnFalse(SelPostHook):
    """SEL.3.b.i: an else-less if whose chain selected nothing restarts
    the program (the step cap bounds the resulting cycle)."""

    def after_if(self, m, node, taken):
        if taken is None and node.else_body is None:
            m.emit(node.node_id, "restart")
            raise _Restart()


class HaltOnFalse(SelPostHook):
    """SEL.3.b.ii: an else-less if whose chain selected nothing ends the
    program."""

    def after_if(self, m, node, taken):
        if taken is None and node.else_body is None:
            m.halt(node.node_id, "false-condition-ends-program")


class IfAsWhile(SelRepeatHook):
    """SEL.4.a.ii.A: the statement repeats until no cond-branch fires."""

    def run(self, m, node):
        while True:
            taken = m.run_if_once(node)
            if taken is None or taken == "else":
                return


class IfNTimes(SelRepeatHook):
    """SEL.4.a.ii.B: the whole statement executes a fixed number of times."""

    def __init__(self, n: int):
        self.n = n

    def run(self, m, node):
        for _ in range(self.n):
            m.run_if_once(node)


class ConditionWatcher(SelTriggerHook):
    """SEL.4.b.i / SEL.4.b.ii: a simple if acts as a single-fire watcher.

    Armed watchers re-check their condition after every executed
    statement; the first true check runs the branch body and disarms.
    With ``from_start`` the watcher is armed from the beginning of the
    run, otherwise arming happens when control reaches a false if.
    Evaluation faults during watch checks count as "not yet true".
    """

    def __init__(self, from_start: bool):
        self.from_start = from_start
        self.armed: dict[int, ml.If] = {}
        self.fired: set[int] = set()
        self._checking = False

    def on_run_start(self, m):
        if self.from_start:
            for stmt in ml.iter_statements(m.program):
                if ml.is_simple_if(stmt):
                    self.armed[stmt.node_id] = stmt

    def handles(self, node):
        return ml.is_simple_if(node)

    def at_statement(self, m, node):
        nid = node.node_id
        if nid in self.fired:
            return
        v = m.eval_if_cond(node, 0)
        if truthy(v):
            self.fired.add(nid)
            self.armed.pop(nid, None)
            m.exec_branch_body(node, 0)
        elif not self.from_start:
            self.armed[nid] = node

    def after_statement(self, m):
        if self._checking or not self.armed:
            return
        self._checking = True
        try:
            for nid in list(self.armed.keys()):
                node = self.armed.get(nid)
                if node is None:
                    continue
                try:
                    v = truthy(m.eval(node.branches[0].cond))
                except RuntimeFault:
                    continue
                m.emit(nid, "cond", value=v, watch=True)
                if v:
                    self.fired.add(nid)
                    self.armed.pop(nid, None)
                    m.emit(nid, "branch", branch=0)
                    for s in node.branches[0].body.statements:
                        m.exec_stmt(s)
        finally:
            self._checking = False

    def capture(self):
        return (dict(self.armed), set(self.fired))

    def restore(self, snap):
        self.armed = dict(snap[0])
        self.fired = set(snap[1])


# ---------------------------------------------------------------------------
# Iteration: entry, cycle, and phase variants
# ---------------------------------------------------------------------------

class EntryAtBody(LoopEntryHook):
    """ITER.3.a.ii: the cycle is entered at the body phase; the first
    condition check never happens (do-while entry for every loop)."""

    def entry_phase(self, act):
        return "body"


class LoopIsIf(LoopEntryHook, LoopCycleHook):
    """ITER.1.b: init, one condition check, at most one body, no update."""

    one_pass = True


class UpdateFirstEntry(LoopEntryHook, LoopCycleHook):
    """ITER.3.b.iii: the update runs first, right after initialization.
    Claims both order slots so it cannot combine with other orderings."""

    def entry_phase(self, act):
        if act.kind == "for":
            return "update"
        return super().entry_phase(act)


class DeferredInit(LoopEntryHook):
    """ITER.3.b.i: initialization is skipped at entry; the first cycle
    uses the prior binding, and init runs in place of the first update."""

    skip_init = True
    init_replaces_first_update = True


class UpdateBeforeBody(LoopCycleHook):
    """ITER.3.b.ii.A: every iteration runs cond, update, then body."""

    def ring(self, act):
        return ("cond", "update", "body")


class UpdateBeforeBodyPreIncOnly(LoopCycleHook):
    """ITER.3.b.ii.B: as A, but only when the header update is a prefix
    increment or decrement."""

    def ring(self, act):
        if isinstance(act.update, ml.IncDec) and act.update.prefix:
            return ("cond", "update", "body")
        return ("cond", "body", "update")


class SkipPhase(PhaseSkipHook):
    """ITER.3.a.i / iii / iv / v: one loop phase is omitted entirely."""

    def __init__(self, phase: str):
        self.skip = frozenset([phase])


# ---------------------------------------------------------------------------
# Iteration: condition semantics variants
# ---------------------------------------------------------------------------

class ExtraIterations(CondSemHook):
    """ITER.5.a.i: after the condition first turns false, k extra full
    iterations run before the loop exits."""

    def __init__(self, k: int):
        self.k = k

    def decide(self, m, act, value):
        if value:
            return "continue"
        if not act.cond_state.get("extras_done"):
            act.cond_state["extras_done"] = True
            return ("extra", self.k)
        return "exit"


class UntilIfFirstFalse(CondSemHook):
    """ITER.5.a.ii.A: an until-reading, but only when the first check is
    false; a first true check gives standard while behavior."""

    def decide(self, m, act, value):
        mode = act.cond_state.setdefault("mode", "standard" if value else "until")
        if mode == "standard":
            return "continue" if value else "exit"
        return "exit" if value else "continue"


class UntilAlways(CondSemHook):
    """ITER.5.a.ii.B: the loop runs exactly while the condition is false."""

    def decide(self, m, act, value):
        return "exit" if value else "continue"


class SeekTrueThenWhile(CondSemHook):
    """ITER.5.a.iii.A: a first false check starts a seeking phase that
    iterates until the condition turns true, then standard while behavior
    until it is false again."""

    skip_body_while_seeking = False

    def decide(self, m, act, value):
        if "mode" not in act.cond_state:
            act.cond_state["mode"] = "standard" if value else "seek"
        if act.cond_state["mode"] == "seek":
            if value:
                act.cond_state["mode"] = "standard"
                return "continue"
            return "continue-skip-body" if self.skip_body_while_seeking else "continue"
        return "continue" if value else "exit"


class SkipUntilTrueThenWhile(SeekTrueThenWhile):
    """ITER.5.a.iii.B: as A, but the seeking phase skips the body and
    only advances the update."""

    skip_body_while_seeking = True


class RecheckDuringBody(CondSemHook):
    """ITER.3.b.iv: the condition is re-checked after every body
    statement; a false check leaves the loop at once, skipping the
    update."""

    recheck_during_body = True


class SwapStrictness(LoopCondEvalHook):
    """ITER.5.b.i.A: strict and non-strict comparisons trade places in
    loop conditions."""

    op_map = {"<": "<=", "<=": "<", ">": ">=", ">=": ">"}


class SwapDirection(LoopCondEvalHook):
    """ITER.5.b.i.B: comparison direction flips in loop conditions."""

    op_map = {"<": ">", ">": "<", "<=": ">=", ">=": "<="}


# ---------------------------------------------------------------------------
# Iteration: body scheduling variants
# ---------------------------------------------------------------------------

def _virtual_step(stmt: ml.SimpleStmt, var: str, value, read) -> object:
    """The value ``var`` takes when a header statement runs against it."""

    def read_with_override(name):
        return value if name == var else read(name)

    if isinstance(stmt, ml.IncDec):
        if stmt.target != var:
            return value
        base = read_with_override(stmt.target)
        if type(base) is bool:
            raise RuntimeFault("type-error", f"'{stmt.op}' requires an integer")
        return ec._check_range(base + (1 if stmt.op == "++" else -1))
    if stmt.target != var:
        return value
    if stmt.op == "=":
        return ec.eval_core(stmt.value, read_with_override)
    current = read_with_override(stmt.target)
    rhs = ec.eval_core(stmt.value, read_with_override)
    return ec.apply_binop(stmt.op[0], current, rhs)


class CountedStatementSchedule(BodyScheduleHook):
    """ITER.1.d: a loop with a constant trip count n performs exactly n
    statement-executions, drawn cyclically from the body, and the header
    update applies once per statement-execution."""

    def drive(self, m, act):
        if act.kind != "for":
            return None
        n = ml.constant_trip_count(act.node)
        if n is None:
            return None
        m.loop_prologue(act)
        stmts = act.body_stmts
        for j in range(n if stmts else 0):
            stmt = stmts[j % len(stmts)]
            act.phase = "body"
            m.emit(act.node.node_id, "phase", phase="body")
            act.body_runs += 1
            m.loop_body_depth += 1
            try:
                m.exec_stmt(stmt)
            except ec._Break:
                return "break"
            except ec._Continue:
                pass
            finally:
                m.loop_body_depth -= 1
            m.run_loop_update(act)
        return "normal"


class UnbundledStatements(BodyScheduleHook):
    """ITER.3.b.v: the control sequence is derived from the header alone;
    each body statement then runs once per control value, in statement
    order, with the control variable pinned to that value."""

    def drive(self, m, act):
        if act.kind != "for" or act.control_var is None:
            return None
        var = act.control_var
        bound_after_init = (
            (act.init is not None and act.init.target == var) or var in m.state.vars
        )
        if not bound_after_init and not (act.cond is not None and _expr_reads(act.cond, var)):
            # no control sequence can be derived and none is observable
            return None
        m.loop_prologue(act)
        value = m.read_var(var)  # faults here mirror the header's own read
        op_map = m.hooks.loop_cond_eval.op_map

        def read_with(name):
            return value if name == var else m.read_var(name)

        values = []
        while len(values) < m.limits.max_events:
            if act.cond is not None and not truthy(ec.eval_core(act.cond, read_with, op_map)):
                break
            values.append(value)
            if act.update is None:
                break
            value = _virtual_step(act.update, var, value, m.read_var)
        for stmt in act.body_stmts:
            for v in values:
                m.write_var(var, v, act.node.node_id)
                act.phase = "body"
                m.emit(act.node.node_id, "phase", phase="body")
                act.body_runs += 1
                m.loop_body_depth += 1
                try:
                    m.exec_stmt(stmt)
                except ec._Break:
                    return "break"
                except ec._Continue:
                    pass
                finally:
                    m.loop_body_depth -= 1
        m.write_var(var, value, act.node.node_id)
        return "normal"


def _expr_reads(expr: ml.Expr, name: str) -> bool:
    if isinstance(expr, ml.Var):
        return expr.name == name
    if isinstance(expr, ml.Unary):
        return _expr_reads(expr.operand, name)
    if isinstance(expr, ml.Binary):
        return _expr_reads(expr.left, name) or _expr_reads(expr.right, name)
    return False


# ---------------------------------------------------------------------------
# Iteration: update semantics variants
# ---------------------------------------------------------------------------

def _additive_update(update: Optional[ml.SimpleStmt]):
    """(syntactic sign, delta expression) for additive header updates.
    A None delta means an increment/decrement of one."""
    if isinstance(update, ml.IncDec):
        return (1 if update.op == "++" else -1), None
    if isinstance(update, ml.Assign):
        if update.op == "+=":
            return 1, update.value
        if update.op == "-=":
            return -1, update.value
        if update.op == "=" and isinstance(update.value, ml.Binary):
            e = update.value
            if e.op in ("+", "-") and isinstance(e.left, ml.Var) and e.left.name == update.target:
                return (1 if e.op == "+" else -1), e.right
            if e.op == "+" and isinstance(e.right, ml.Var) and e.right.name == update.target:
                return 1, e.left
    return None


class AlternatingUpdate(UpdateSemHook):
    """ITER.4.a.i.A: the additive update delta flips sign on every other
    application, starting as written."""

    def apply(self, m, act):
        additive = _additive_update(act.update)
        if additive is None:
            return super().apply(m, act)
        sign, delta_expr = additive
        delta = 1 if delta_expr is None else m.eval(delta_expr)
        if type(delta) is bool:
            raise RuntimeFault("type-error", "loop update requires an integer")
        if act.update_count % 2 == 1:
            sign = -sign
        current = m.read_var(act.update.target)
        if type(current) is bool:
            raise RuntimeFault("type-error", "loop update requires an integer")
        m.write_var(act.update.target, ec._check_range(current + sign * delta), act.update.node_id)


class UnitStepUpdate(UpdateSemHook):
    """ITER.4.a.i.B: update magnitude is one; the sign comes from the
    written additive form, and non-additive updates become plus one."""

    def apply(self, m, act):
        additive = _additive_update(act.update)
        sign = additive[0] if additive is not None else 1
        current = m.read_var(act.update.target)
        if type(current) is bool:
            raise RuntimeFault("type-error", "loop update requires an integer")
        m.write_var(act.update.target, ec._check_range(current + sign), act.update.node_id)


class IncDecMeansTwo(UpdateSemHook):
    """ITER.4.a.i.C: ++/-- in the header update steps by two."""

    def apply(self, m, act):
        if not isinstance(act.update, ml.IncDec):
            return super().apply(m, act)
        current = m.read_var(act.update.target)
        if type(current) is bool:
            raise RuntimeFault("type-error", "loop update requires an integer")
        step = 2 if act.update.op == "++" else -2
        m.write_var(act.update.target, ec._check_range(current + step), act.update.node_id)


# ---------------------------------------------------------------------------
# Iteration: state view variants
# ---------------------------------------------------------------------------

_UNBOUND = object()


class _ShadowControlOverlay(Overlay):
    """Condition reads of the control variable resolve to a shadow value
    touched only by initialization and the header update; during the
    update phase the header works on the shadow and writes both."""

    def __init__(self, var: str, value):
        self.var = var
        self.value = value

    def read(self, name, phase):
        if name == self.var and phase in ("cond", "update"):
            if self.value is _UNBOUND:
                raise RuntimeFault("uninitialized-read", f"read of unbound variable '{name}'")
            return True, self.value
        return False, None

    def write(self, name, value, phase):
        if name == self.var and phase in ("init", "update"):
            self.value = value
        return False  # writes always reach the real variable too

    def capture(self):
        return self.value

    def restore(self, snap):
        self.value = snap


class ShadowControlVar(StateViewHook):
    """ITER.4.a.ii.A installer."""

    def make_overlay(self, m, act):
        if act.kind != "for" or act.control_var is None:
            return None
        value = m.state.vars.get(act.control_var, _UNBOUND)
        return _ShadowControlOverlay(act.control_var, value)


class _FrozenBodyControlOverlay(Overlay):
    """Body reads of the control variable yield its post-init value."""

    def __init__(self, var: str, value):
        self.var = var
        self.value = value

    def read(self, name, phase):
        if name == self.var and phase == "body":
            if self.value is _UNBOUND:
                raise RuntimeFault("uninitialized-read", f"read of unbound variable '{name}'")
            return True, self.value
        return False, None

    def capture(self):
        return self.value

    def restore(self, snap):
        self.value = snap


class FrozenBodyControlVar(StateViewHook):
    """ITER.4.a.ii.B installer."""

    def make_overlay(self, m, act):
        if act.kind != "for" or act.control_var is None:
            return None
        value = m.state.vars.get(act.control_var, _UNBOUND)
        return _FrozenBodyControlOverlay(act.control_var, value)


class _LoopLocalWritesOverlay(Overlay):
    """Writes to non-control variables are buffered during the loop:
    reads see the loop-entry value, and the last write per variable
    becomes visible when the loop exits."""

    def __init__(self, m: Machine, act, control: Optional[str]):
        self._machine = m
        self._act = act
        self.control = control
        self.pending: dict[str, object] = {}
        self.entry: dict[str, object] = {}

    def read(self, name, phase):
        if name != self.control and name in self.pending:
            value = self.entry[name]
            if value is _UNBOUND:
                raise RuntimeFault("uninitialized-read", f"read of unbound variable '{name}'")
            return True, value
        return False, None

    def write(self, name, value, phase):
        if name == self.control:
            return False
        if name not in self.pending:
            try:
                self.entry[name] = self._machine.read_var(name)
            except RuntimeFault:
                self.entry[name] = _UNBOUND
        self.pending[name] = value
        return True

    def on_exit(self, m):
        for name, value in self.pending.items():
            m.write_var(name, value, self._act.node.node_id)

    def capture(self):
        return dict(self.pending), dict(self.entry)

    def restore(self, snap):
        self.pending = dict(snap[0])
        self.entry = dict(snap[1])


class LoopLocalWrites(StateViewHook):
    """ITER.4.b installer; on header-less loops every variable counts as
    non-control."""

    def make_overlay(self, m, act):
        return _LoopLocalWritesOverlay(m, act, act.control_var)


# ---------------------------------------------------------------------------
# Iteration: post and nesting variants
# ---------------------------------------------------------------------------

class HaltAfterLoop(LoopPostHook):
    """ITER.2.b.i: a normal loop exit ends the program."""

    def after_loop(self, m, act, exit_kind):
        if exit_kind == "normal":
            m.halt(act.node.node_id, "program-ends-after-loop")


class IterativeIfElse(LoopPostHook):
    """ITER.2.b.ii: a false condition executes the statement following
    the loop and re-checks; only break or the caps end the loop."""

    def on_cond_exit(self, m, act):
        return "recheck"


class IgnoreOuterLoop(LoopNestHook):
    """ITER.6.d: a loop that contains another loop makes one conditional
    pass; the inner loop itself runs normally."""

    def drive(self, m, act):
        if m.node_contains_loop(act.node):
            return m.one_pass_loop(act)
        return None


class AbandonOuterIterationOnEmptyInner(LoopNestHook):
    """ITER.6.f: an inner loop whose first condition check is false
    abandons the rest of the enclosing iteration (the outer update still
    runs, as with continue)."""

    def after_exit(self, m, act, exit_kind):
        if act.first_cond is False and act.body_runs == 0 and m.activations:
            m.emit(act.node.node_id, "jump", stmt="inner-loop-skip", effect="continue")
            raise _Continue()


# ---------------------------------------------------------------------------
# Jump variants
# ---------------------------------------------------------------------------

class BreakIsContinue(JumpHook):
    """ITER.7.a.i."""

    def __init__(self):
        super().__init__("break")

    def effect(self, m, node):
        m.emit(node.node_id, "jump", stmt="break", effect="continue")
        raise _Continue()


class BreakHaltsProgram(JumpHook):
    """ITER.7.a.ii."""

    def __init__(self):
        super().__init__("break")

    def effect(self, m, node):
        m.emit(node.node_id, "jump", stmt="break", effect="halt")
        m.halt(node.node_id, "break-terminates-program")


class BreakIsNoop(JumpHook):
    """ITER.7.a.iii."""

    def __init__(self):
        super().__init__("break")

    def effect(self, m, node):
        m.emit(node.node_id, "jump", stmt="break", effect="noop")


class ContinueIsNoop(JumpHook):
    """ITER.7.b.i."""

    def __init__(self):
        super().__init__("continue")

    def effect(self, m, node):
        m.emit(node.node_id, "jump", stmt="continue", effect="noop")


# ---------------------------------------------------------------------------
# The canonical variant table
# ---------------------------------------------------------------------------

_SLOT_FIELDS = {
    "sel.branch_select": "branch_select",
    "sel.cond_eval": "sel_cond_eval",
    "sel.post": "sel_post",
    "sel.repeat": "sel_repeat",
    "sel.trigger": "sel_trigger",
    "loop.entry_order": "loop_entry",
    "loop.cycle_order": "loop_cycle",
    "loop.phase_skip": "loop_phase_skip",
    "loop.cond_semantics": "loop_cond_sem",
    "loop.cond_eval": "loop_cond_eval",
    "loop.body_schedule": "loop_body_schedule",
    "loop.update_semantics": "loop_update_sem",
    "loop.state_view": "loop_state_view",
    "loop.post": "loop_post",
    "loop.nesting": "loop_nest",
    "jump.break": "on_break",
    "jump.continue": "on_continue",
}


@dataclass(frozen=True)
class VariantSpec:
    code: str
    title: str
    quote: str
    status: str
    slots: tuple[str, ...] = ()
    kind: Optional[str] = None
    params: dict[str, tax.ParamSpec] = None  # type: ignore[assignment]
    applicability: tuple[str, ...] = ()
    rationale: Optional[str] = None
    hook_factory: Optional[Callable[[dict], object]] = None
    rewrite_factory: Optional[Callable[[dict], Callable[[ml.Program], ml.Program]]] = None

    def __post_init__(self):
        if self.params is None:
            object.__setattr__(self, "params", {})


def _int_param(default: int, lo: int, hi: int) -> tax.ParamSpec:
    return tax.ParamSpec(type="int", default=default, min=lo, max=hi)


def _choice_param(default: str, choices: tuple[str, ...]) -> tax.ParamSpec:
    return tax.ParamSpec(type="string", default=default, choices=choices)


VARIANTS: tuple[VariantSpec, ...] = (
    # --- selection ---
    VariantSpec(
        "SEL.1.a.i", "all branches execute",
        "all branches are executed independent of their condition",
        "executable", ("sel.branch_select",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: AllBranchesRun(),
    ),
    VariantSpec(
        "SEL.1.a.ii", "branch chosen by something other than the condition",
        "due to something other than the truth of the condition",
        "parameterized", ("sel.branch_select",), "runtime-hook",
        params={"branch": _choice_param("last", ("then", "last", "else"))},
        applicability=("if",), hook_factory=lambda p: ForcedBranch(p["branch"]),
    ),
    VariantSpec(
        "SEL.1.b.i", "chain not exited after a hit",
        "more than one branch can be executed",
        "executable", ("sel.branch_select",), "runtime-hook",
        applicability=("else-if-chain",), hook_factory=lambda p: AllTrueBranchesRun(),
    ),
    VariantSpec(
        "SEL.1.b.ii", "chain exited at first false condition",
        "finish before checking all its conditions",
        "executable", ("sel.branch_select",), "runtime-hook",
        applicability=("multi-way-selection",), hook_factory=lambda p: ExitOnFirstFalse(),
    ),
    VariantSpec(
        "SEL.1.c", "body executes when condition is false",
        "to be executed if condition is wrong",
        "executable", ("sel.branch_select",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: NegatedConditions(),
    ),
    VariantSpec(
        "SEL.2.a", "following statements belong to the branch",
        "placed after the selection statement",
        "parameterized", ("sel.body_extent",), "structural-rewrite",
        params={"k": _int_param(1, 1, 2)},
        applicability=("statement-after-selection",),
        rewrite_factory=lambda p: (lambda prog, k=p["k"]: rw.absorb_following_into_selection(prog, k)),
    ),
    VariantSpec(
        "SEL.2.b", "end of each branch falls outside the selection",
        "placed inside the selection body",
        "executable", ("sel.body_extent",), "structural-rewrite",
        applicability=("if",), rewrite_factory=lambda p: rw.hoist_branch_tails,
    ),
    VariantSpec(
        "SEL.3.a.i", "selection always needs two cases",
        "all selection statements require two cases",
        "descriptive",
        rationale="code reading cannot distinguish this belief from SEL.3.c.ii",
    ),
    VariantSpec(
        "SEL.3.b.i", "false condition restarts the program",
        "control goes back to the beginning",
        "executable", ("sel.post",), "runtime-hook",
        applicability=("if-without-else",), hook_factory=lambda p: RestartOnFalse(),
    ),
    VariantSpec(
        "SEL.3.b.ii", "false condition ends the program",
        "a false condition ends the program",
        "executable", ("sel.post",), "runtime-hook",
        applicability=("if-without-else",), hook_factory=lambda p: HaltOnFalse(),
    ),
    VariantSpec(
        "SEL.3.c.i", "else-branch always executes",
        "else-branch always executes independent",
        "executable", ("sel.branch_select",), "runtime-hook",
        applicability=("else",), hook_factory=lambda p: ElseAlwaysRuns(),
    ),
    VariantSpec(
        "SEL.3.c.ii", "next statement is the else-branch",
        "using else is optional",
        "executable", ("sel.body_extent",), "structural-rewrite",
        applicability=("if-without-else", "statement-after-selection"),
        rewrite_factory=lambda p: rw.next_statement_becomes_else,
    ),
    VariantSpec(
        "SEL.4.a.i", "condition evaluated several times",
        "a branch condition can be evaluated several times",
        "descriptive",
        rationale="re-evaluating a side-effect-free condition is unobservable here",
    ),
    VariantSpec(
        "SEL.4.a.ii.A", "if repeats until condition is false",
        "executes as many times as needed",
        "executable", ("sel.repeat",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: IfAsWhile(),
    ),
    VariantSpec(
        "SEL.4.a.ii.B", "if executes a fixed number of times",
        "for number of times",
        "parameterized", ("sel.repeat",), "runtime-hook",
        params={"n": _int_param(2, 2, 3)},
        applicability=("if",), hook_factory=lambda p: IfNTimes(p["n"]),
    ),
    VariantSpec(
        "SEL.4.b.i", "condition watched after the statement",
        "only checked in the part of the program after",
        "executable", ("sel.trigger",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: ConditionWatcher(from_start=False),
    ),
    VariantSpec(
        "SEL.4.b.ii", "condition watched across the whole program",
        "checked in the whole program",
        "executable", ("sel.trigger",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: ConditionWatcher(from_start=True),
    ),
    VariantSpec(
        "SEL.4.c.i", "condition evaluated after the branch",
        "evaluated after the corresponding branch",
        "executable", ("sel.cond_eval",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: HindsightCondition(),
    ),
    VariantSpec(
        "SEL.4.c.ii.A.I", "body runs from the point the condition turns true",
        "the body is executed from this point on forward",
        "executable", ("sel.cond_eval",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: BodyFromTruePoint(),
    ),
    VariantSpec(
        "SEL.4.c.ii.A.II", "body runs from the true point while it stays true",
        "as long as the condition remains true",
        "executable", ("sel.cond_eval",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: BodyWhileTrue(),
    ),
    VariantSpec(
        "SEL.4.c.ii.B", "whole body runs once the condition turns true",
        "the whole body is executed",
        "executable", ("sel.cond_eval",), "runtime-hook",
        applicability=("if",), hook_factory=lambda p: WholeBodyOnTruePoint(),
    ),
    VariantSpec(
        "SEL.4.d.i", "chain conditions checked out of order",
        "checked not in the order they are placed",
        "parameterized", ("sel.branch_select",), "runtime-hook",
        params={"order": _choice_param("reverse", ("reverse",))},
        applicability=("else-if-chain",), hook_factory=lambda p: PermutedChainOrder(p["order"]),
    ),
    VariantSpec(
        "SEL.4.d.ii.A", "condition re-checked for the else-branch",
        "Condition is checked again for the else-branch",
        "executable", ("sel.branch_select",), "runtime-hook",
        applicability=("else",), hook_factory=lambda p: RecheckForElse(),
    ),
    VariantSpec(
        "SEL.4.d.ii.B", "complementary ifs fuse into if/else",
        "treated as an else-branch",
        "executable", ("sel.nesting",), "structural-rewrite",
        applicability=("complementary-consecutive-ifs",),
        rewrite_factory=lambda p: rw.fuse_complementary_ifs,
    ),
    VariantSpec(
        "SEL.5.a.i", "nesting read as sequencing",
        "Misunderstanding nesting as sequencing",
        "executable", ("sel.nesting",), "structural-rewrite",
        applicability=("nested-if",), rewrite_factory=lambda p: rw.flatten_nested_ifs,
    ),
    VariantSpec(
        "SEL.5.a.ii", "sequencing read as nesting",
        "both conditions need to be true",
        "executable", ("sel.nesting",), "structural-rewrite",
        applicability=("consecutive-ifs",), rewrite_factory=lambda p: rw.nest_consecutive_ifs,
    ),
    VariantSpec(
        "SEL.5.b", "if-conditions ignored inside loops",
        "the body executes in any case",
        "executable", ("sel.branch_select",), "runtime-hook",
        applicability=("nested-if-in-loop",), hook_factory=lambda p: LoopIfsUnconditional(),
    ),
    # --- iteration ---
    VariantSpec(
        "ITER.1.a", "loop body always executes exactly once",
        "loop body is always executed once",
        "executable", ("loop.nesting",), "structural-rewrite",
        applicability=("loop",), rewrite_factory=lambda p: rw.unroll_loops_once,
    ),
    VariantSpec(
        "ITER.1.b", "loop is if",
        "loop is if",
        "executable", ("loop.entry_order", "loop.cycle_order"), "runtime-hook",
        applicability=("loop",),
        hook_factory=lambda p: (lambda obj: {"loop_entry": obj, "loop_cycle": obj})(LoopIsIf()),
    ),
    VariantSpec(
        "ITER.1.c", "header read as simultaneous equations",
        "equations that need to be fulfilled",
        "descriptive",
        rationale="a simultaneous-equation reading has no deterministic operational rule",
    ),
    VariantSpec(
        "ITER.1.d", "counter counts statement executions",
        "how many of the statements inside the loop body",
        "executable", ("loop.body_schedule",), "runtime-hook",
        applicability=("constant-trip-count-loop",),
        hook_factory=lambda p: CountedStatementSchedule(),
    ),
    VariantSpec(
        "ITER.2.a.i", "end of loop body falls outside the loop",
        "considered as not belonging to it",
        "executable", ("loop.body_extent",), "structural-rewrite",
        applicability=("loop",), rewrite_factory=lambda p: rw.hoist_loop_body_tail,
    ),
    VariantSpec(
        "ITER.2.a.ii", "following statements belong to the loop body",
        "considered to be part of body",
        "parameterized", ("loop.body_extent",), "structural-rewrite",
        params={"k": _int_param(1, 1, 2)},
        applicability=("statement-after-loop",),
        rewrite_factory=lambda p: (lambda prog, k=p["k"]: rw.absorb_following_into_loop(prog, k)),
    ),
    VariantSpec(
        "ITER.2.b.i", "program ends when the loop finishes",
        "the program terminates after loop finishes",
        "executable", ("loop.post",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: HaltAfterLoop(),
    ),
    VariantSpec(
        "ITER.2.b.ii", "loop as iterative if-else",
        "iterative if-else-construct",
        "executable", ("loop.post",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: IterativeIfElse(),
    ),
    VariantSpec(
        "ITER.3.a.i", "body skipped",
        "without executing the loop’s iteration",
        "executable", ("loop.phase_skip",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: SkipPhase("body"),
    ),
    VariantSpec(
        "ITER.3.a.ii", "body runs once before the first check",
        "Directly executing the loop body after initializing",
        "executable", ("loop.entry_order",), "runtime-hook",
        applicability=("pretest-loop",), hook_factory=lambda p: EntryAtBody(),
    ),
    VariantSpec(
        "ITER.3.a.iii", "condition check skipped",
        "condition check of a loop can be omitted",
        "executable", ("loop.phase_skip",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: SkipPhase("cond"),
    ),
    VariantSpec(
        "ITER.3.a.iv", "update step skipped",
        "update step of a loop can be omitted",
        "executable", ("loop.phase_skip",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: SkipPhase("update"),
    ),
    VariantSpec(
        "ITER.3.a.v", "initialization skipped",
        "should not be executed when the loop starts",
        "executable", ("loop.phase_skip",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: SkipPhase("init"),
    ),
    VariantSpec(
        "ITER.3.b.i", "initialization deferred past the first iteration",
        "executed after the iteration finishes",
        "executable", ("loop.entry_order",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: DeferredInit(),
    ),
    VariantSpec(
        "ITER.3.b.ii.A", "update before body (any update)",
        "with any control variable update",
        "executable", ("loop.cycle_order",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: UpdateBeforeBody(),
    ),
    VariantSpec(
        "ITER.3.b.ii.B", "update before body (prefix increment only)",
        "increment happens before the loop body executes",
        "executable", ("loop.cycle_order",), "runtime-hook",
        applicability=("for", "pre-increment"),
        hook_factory=lambda p: UpdateBeforeBodyPreIncOnly(),
    ),
    VariantSpec(
        "ITER.3.b.iii", "update runs first of all",
        "before the loop body AND before the condition check",
        "executable", ("loop.entry_order", "loop.cycle_order"), "runtime-hook",
        applicability=("for",),
        hook_factory=lambda p: (lambda obj: {"loop_entry": obj, "loop_cycle": obj})(UpdateFirstEntry()),
    ),
    VariantSpec(
        "ITER.3.b.iv", "condition checked during the body",
        "permanently checked also during the execution",
        "executable", ("loop.cond_semantics",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: RecheckDuringBody(),
    ),
    VariantSpec(
        "ITER.3.b.v", "body statements unbundled across iterations",
        "Grouping of the statements inside the loop body",
        "executable", ("loop.body_schedule",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: UnbundledStatements(),
    ),
    VariantSpec(
        "ITER.4.a.i.A", "update direction alternates",
        'Inconsistent change of update "direction"',
        "executable", ("loop.update_semantics",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: AlternatingUpdate(),
    ),
    VariantSpec(
        "ITER.4.a.i.B", "update always steps by one",
        "incrementing or decrementing by 1",
        "executable", ("loop.update_semantics",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: UnitStepUpdate(),
    ),
    VariantSpec(
        "ITER.4.a.i.C", "increment operator steps by two",
        "misinterpreted as incrementing by 2",
        "executable", ("loop.update_semantics",), "runtime-hook",
        applicability=("incdec-update-loop",), hook_factory=lambda p: IncDecMeansTwo(),
    ),
    VariantSpec(
        "ITER.4.a.ii.A", "body writes invisible to the condition",
        "no effect on evaluation of condition",
        "executable", ("loop.state_view",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: ShadowControlVar(),
    ),
    VariantSpec(
        "ITER.4.a.ii.B", "body sees a frozen control variable",
        "exact same output for each iteration",
        "executable", ("loop.state_view",), "runtime-hook",
        applicability=("for",), hook_factory=lambda p: FrozenBodyControlVar(),
    ),
    VariantSpec(
        "ITER.4.a.iii.A", "control variable constrains input values",
        "the values that can be read via input",
        "descriptive",
        rationale="the language has no input statements",
    ),
    VariantSpec(
        "ITER.4.a.iii.B", "control variable constrains printed values",
        "the values that can be printed",
        "descriptive",
        rationale="no deterministic rule for how the counter would constrain printed values",
    ),
    VariantSpec(
        "ITER.4.b", "state changes invisible inside the loop",
        "does not affect behavior of body",
        "executable", ("loop.state_view",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: LoopLocalWrites(),
    ),
    VariantSpec(
        "ITER.5.a.i", "loop continues past a false condition",
        "continued after the condition evaluates to false",
        "parameterized", ("loop.cond_semantics",), "runtime-hook",
        params={"k": _int_param(1, 1, 2)},
        applicability=("loop",), hook_factory=lambda p: ExtraIterations(p["k"]),
    ),
    VariantSpec(
        "ITER.5.a.ii.A", "until-reading when the first check is false",
        "only if the condition is wrong to begin with",
        "executable", ("loop.cond_semantics",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: UntilIfFirstFalse(),
    ),
    VariantSpec(
        "ITER.5.a.ii.B", "condition read as the terminating case",
        "describes the terminating case",
        "executable", ("loop.cond_semantics",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: UntilAlways(),
    ),
    VariantSpec(
        "ITER.5.a.iii.A", "iterate until true, then standard while",
        "iterated until the condition is true",
        "executable", ("loop.cond_semantics",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: SeekTrueThenWhile(),
    ),
    VariantSpec(
        "ITER.5.a.iii.B", "skip until true, then standard while",
        "iterations until the condition is true are skipped",
        "executable", ("loop.cond_semantics",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: SkipUntilTrueThenWhile(),
    ),
    VariantSpec(
        "ITER.5.b.i.A", "strict and non-strict comparison confused",
        "strict and non-strict relational operators",
        "executable", ("loop.cond_eval",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: SwapStrictness(),
    ),
    VariantSpec(
        "ITER.5.b.i.B", "comparison direction confused",
        'confuse operands "<" and ">"',
        "executable", ("loop.cond_eval",), "runtime-hook",
        applicability=("loop",), hook_factory=lambda p: SwapDirection(),
    ),
    VariantSpec(
        "ITER.5.b.ii", "logical errors evaluating the condition",
        "logical errors while evaluating the condition",
        "descriptive",
        rationale="unspecified logical errors admit no single operational rule",
    ),
    VariantSpec(
        "ITER.6.a", "nested loops fused into one",
        "executed simultaneously as if they were one loop",
        "executable", ("loop.nesting",), "structural-rewrite",
        applicability=("nested-loops",), rewrite_factory=lambda p: rw.fuse_nested_loops,
    ),
    VariantSpec(
        "ITER.6.b", "nested loops run sequentially",
        "act like two loops that are executed sequentially",
        "executable", ("loop.nesting",), "structural-rewrite",
        applicability=("nested-loops",), rewrite_factory=lambda p: rw.sequence_nested_loops,
    ),
    VariantSpec(
        "ITER.6.c", "inner and outer loop swapped",
        "outer loop is executed completely for every iteration of the inner",
        "executable", ("loop.nesting",), "structural-rewrite",
        applicability=("nested-loops",), rewrite_factory=lambda p: rw.swap_loop_headers,
    ),
    VariantSpec(
        "ITER.6.d", "outer loop never repeats",
        "no repetitions of the outer loop takes place",
        "executable", ("loop.nesting",), "runtime-hook",
        applicability=("nested-loops",), hook_factory=lambda p: IgnoreOuterLoop(),
    ),
    VariantSpec(
        "ITER.6.e", "inner counter overwrites the outer",
        "overwrites the outer counter",
        "executable", ("loop.nesting",), "structural-rewrite",
        applicability=("nested-loops",), rewrite_factory=lambda p: rw.merge_on_inner_header,
    ),
    VariantSpec(
        "ITER.6.f", "empty inner loop abandons the outer iteration",
        "directly starts, if the condition of the inner loop is wrong",
        "executable", ("loop.nesting",), "runtime-hook",
        applicability=("nested-loops",),
        hook_factory=lambda p: AbandonOuterIterationOnEmptyInner(),
    ),
    VariantSpec(
        "ITER.7.a.i", "break is continue",
        "Break is continue",
        "executable", ("jump.break",), "runtime-hook",
        applicability=("break",), hook_factory=lambda p: BreakIsContinue(),
    ),
    VariantSpec(
        "ITER.7.a.ii", "break ends the program",
        "terminates the whole program",
        "executable", ("jump.break",), "runtime-hook",
        applicability=("break",), hook_factory=lambda p: BreakHaltsProgram(),
    ),
    VariantSpec(
        "ITER.7.a.iii", "break is ignored",
        "equivalent to ignoring the break statement",
        "executable", ("jump.break",), "runtime-hook",
        applicability=("break",), hook_factory=lambda p: BreakIsNoop(),
    ),
    VariantSpec(
        "ITER.7.b.i", "continue is ignored",
        "equivalent to ignoring the continue statement",
        "executable", ("jump.continue",), "runtime-hook",
        applicability=("continue",), hook_factory=lambda p: ContinueIsNoop(),
    ),
)

VARIANTS_BY_CODE: dict[str, VariantSpec] = {v.code: v for v in VARIANTS}

DESCRIPTIVE_CODES = frozenset(v.code for v in VARIANTS if v.status == "descriptive")

CATEGORIES: tuple[tuple[str, str, str], ...] = (
    ("SEL", "Selection", "errors concerning selection statements"),
    ("SEL.1", "Selective nature of selection statements",
     "do not (fully) understand that in a conditional statement a program \"decides\""),
    ("SEL.1.a", "Condition truth not seen as the cause of execution",
     "Not considering the truth of a control condition as the cause for the execution of its branch"),
    ("SEL.1.b", "Misunderstanding exit of selection statement",
     "Misunderstanding exit of selection statement"),
    ("SEL.2", "Boundaries of body of selection statement",
     "do not know what parts of a program are part of a selection statement"),
    ("SEL.3", "Else-branch", "errors that are concerned with the else-branch"),
    ("SEL.3.a", "Necessity of the else-branch",
     "Not understanding the necessity of the else-branch"),
    ("SEL.3.b", "Extreme behavior on a false condition",
     "Expecting undefined or extreme behavior in case of evaluation of condition to false"),
    ("SEL.3.c", "Confusion between if/else and if plus statement",
     'Confusion between "if(C) A; else B;" and "if (C) A; B;"'),
    ("SEL.4", "Timing of condition check",
     "do no know that there is a precise timing when the condition is checked"),
    ("SEL.4.a", "If-statement or parts executed multiple times",
     "Thinking an if-statement or parts of it are executed multiple times"),
    ("SEL.4.a.ii", "Multiple execution of the whole if-statement",
     "a selection statement can have several iterations during a single execution"),
    ("SEL.4.b", "Condition checked in parallel",
     "the condition is constantly being checked parallel to the execution of the program"),
    ("SEL.4.c", "Condition checked in hindsight",
     "Thinking the condition is checked in hindsight"),
    ("SEL.4.c.ii", "Condition turns true inside the body",
     "If condition becomes true from a certain point INSIDE of the selection-body"),
    ("SEL.4.c.ii.A", "Body executed from the true point forward",
     "the body is executed from this point on forward"),
    ("SEL.4.d", "Timing in multi-branch selection",
     "Misunderstanding timing of condition check in multi-branch selection statement"),
    ("SEL.4.d.ii", "Confusion between if/else and complementary ifs",
     'Confusion between "if (c) A; else B;" and "if (c) A; if (!c) B;"'),
    ("SEL.5", "Nesting", "nested constructs tend to be difficult for students"),
    ("SEL.5.a", "Sequencing versus nesting of if-statements",
     "Confusion between sequencing versus nesting of if-statements."),
    ("ITER", "Iteration", "errors concerning iteration statements"),
    ("ITER.1", "Repeating nature of iteration statements",
     "a part of the program is repeated a certain number of times"),
    ("ITER.2", "Interaction with code outside of iteration statement",
     "the interaction between iteration statements and the rest of the code"),
    ("ITER.2.a", "Boundaries of the loop body",
     "Misunderstanding boundaries of body of iteration statement"),
    ("ITER.2.b", "Behavior of code outside of the loop",
     "Misunderstanding behavior of Code outside of loop"),
    ("ITER.3", "Order of execution of loop parts",
     "A loop consists of 4 parts: Initialization, condition check, body and update"),
    ("ITER.3.a", "Skipping a part", "Skipping a part"),
    ("ITER.3.b", "Misconceptions about the order of loop-parts",
     "Misconceptions about the order of loop-parts"),
    ("ITER.3.b.ii", "Update before the body",
     "the update of the control variable happens before the loop body executes"),
    ("ITER.4", "State", "difficulties with the state of the program"),
    ("ITER.4.a", "Difficulties concerning the control variable",
     "Difficulties concerning the control variable"),
    ("ITER.4.a.i", "Improper handling of the loop counter",
     "Improper handling of loop counter"),
    ("ITER.4.a.ii", "Mental disconnection of the control variable",
     "Mental disconnection of control variable in loop body, in loop condition and in update statement"),
    ("ITER.4.a.iii", "Control variable constrains handled values",
     "constrains the values handled within the loop"),
    ("ITER.5", "Difficulties with loop condition",
     "difficulties about the effect of the condition and how it is evaluated"),
    ("ITER.5.a", "Misunderstanding the effect of the condition",
     "Misunderstanding effect of the condition"),
    ("ITER.5.a.ii", "Condition read as the terminating case",
     "describes the terminating case, thus one exits the loop when it becomes true"),
    ("ITER.5.a.iii", "Condition validated in hindsight",
     'becomes true after a number of iterations the condition is "validated" in hindsight'),
    ("ITER.5.b", "Misunderstanding the evaluation of the condition",
     "Misunderstanding the evaluation of the condition"),
    ("ITER.5.b.i", "Operator understanding limits the range",
     "Struggle to identify the correct range of the control variables of loops, based on understanding of operators"),
    ("ITER.6", "Nesting", "nesting is difficult concept for students, even more so for iteration"),
    ("ITER.7", "Break and continue",
     "students tend to struggle with their meaning"),
    ("ITER.7.a", "Misunderstanding the break-statement",
     "Misunderstanding the break-statement"),
    ("ITER.7.b", "Misunderstanding the continue-statement",
     "Misunderstanding the continue-statement"),
)


def build_default_registry() -> tax.Registry:
    """The canonical table rendered as a Registry."""
    categories = tuple(
        tax.CategoryNode(tax.MisconceptionCode.parse(code), title, quote)
        for code, title, quote in CATEGORIES
    )
    entries = tuple(
        tax.CatalogEntry(
            code=tax.MisconceptionCode.parse(v.code),
            title=v.title,
            quote=v.quote,
            status=v.status,
            slots=v.slots,
            kind=v.kind,
            params=dict(v.params),
            applicability=v.applicability,
            rationale=v.rationale,
        )
        for v in sorted(VARIANTS, key=lambda v: tax.MisconceptionCode.parse(v.code).sort_key)
    )
    return tax.Registry(version="1.0", categories=categories, entries=entries)


def catalog_coverage_issues(registry: tax.Registry) -> list[str]:
    """Differences between a registry and the canonical table."""
    issues = []
    want = {v.code for v in VARIANTS}
    have = {str(e.code) for e in registry.entries}
    for missing in sorted(want - have):
        issues.append(f"missing catalog entry {missing}")
    for extra in sorted(have - want):
        issues.append(f"unexpected catalog entry {extra}")
    for entry in registry.entries:
        spec = VARIANTS_BY_CODE.get(str(entry.code))
        if spec is None:
            continue
        if entry.status != spec.status:
            issues.append(f"{entry.code}: status {entry.status!r} != {spec.status!r}")
        if entry.slots != spec.slots:
            issues.append(f"{entry.code}: slot mismatch")
    return issues


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemanticProfile:
    """A conflict-free set of active variants with bound parameters."""

    active: tuple[tuple[str, tuple[tuple[str, object], ...]], ...]

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(code for code, _ in self.active)

    def params_of(self, code: str) -> dict[str, object]:
        for c, bound in self.active:
            if c == code:
                return dict(bound)
        raise KeyError(code)

    def non_default_param_count(self, registry: tax.Registry) -> int:
        count = 0
        for code, bound in self.active:
            entry = registry.lookup(code)
            for name, value in bound:
                if entry.params[name].default != value:
                    count += 1
        return count

    def __str__(self) -> str:
        return format_profile(self)

    def __len__(self) -> int:
        return len(self.active)


EMPTY_PROFILE = SemanticProfile(active=())


def compile_profile(
    registry: tax.Registry,
    requested: list[tuple[str, dict[str, object]]] | list[str],
) -> SemanticProfile:
    """Validate a requested variant set into a SemanticProfile.

    Accepts either (code, params) pairs or bare code strings.  Unknown
    and descriptive codes, out-of-range parameters, and hook-slot
    conflicts are rejected.
    """
    normalized: list[tuple[str, dict[str, object]]] = []
    for item in requested:
        if isinstance(item, str):
            normalized.append((item, {}))
        else:
            code, params = item
            normalized.append((str(code), dict(params)))
    slot_owner: dict[str, str] = {}
    active = []
    seen: set[str] = set()
    for code, params in normalized:
        entry = registry.lookup(code)
        code = str(entry.code)
        if code in seen:
            raise ProfileError(f"variant {code} requested twice")
        seen.add(code)
        if entry.status == "descriptive":
            raise ProfileError(f"{code} is descriptive-only and cannot be simulated")
        spec = VARIANTS_BY_CODE.get(code)
        if spec is None or (spec.hook_factory is None and spec.rewrite_factory is None):
            raise ProfileError(f"no executable rule is registered for {code}")
        for name in params:
            if name not in entry.params:
                raise ProfileError(f"{code} has no parameter {name!r}")
        bound = {}
        for name, pspec in entry.params.items():
            value = params.get(name, pspec.default)
            if not pspec.in_range(value):
                raise ProfileError(f"{code}: parameter {name}={value!r} outside its allowed range")
            bound[name] = value
        for slot in entry.slots:
            if slot in slot_owner:
                raise ProfileError(
                    f"slot conflict on {slot}: {slot_owner[slot]} and {code} both override it"
                )
            slot_owner[slot] = code
        active.append((code, tuple(sorted(bound.items()))))
    active.sort(key=lambda pair: tax.MisconceptionCode.parse(pair[0]).sort_key)
    return SemanticProfile(active=tuple(active))


def applicable_variants(registry: tax.Registry, feats: frozenset[str]) -> list[str]:
    """Codes whose required constructs the feature set exhibits, sorted."""
    out = []
    for entry in registry.entries:
        if entry.status == "descriptive":
            continue
        code = str(entry.code)
        spec = VARIANTS_BY_CODE.get(code)
        if spec is None:
            continue
        if all(f in feats for f in entry.applicability):
            out.append(code)
    return out


def build_hooks(profile: SemanticProfile) -> Hooks:
    """Fresh per-run hook objects for the profile's runtime variants."""
    hooks = Hooks.reference()
    for code, bound in profile.active:
        spec = VARIANTS_BY_CODE[code]
        if spec.hook_factory is None:
            continue
        made = spec.hook_factory(dict(bound))
        if isinstance(made, dict):
            for field_name, obj in made.items():
                setattr(hooks, field_name, obj)
        else:
            field_name = _SLOT_FIELDS[spec.slots[0]]
            setattr(hooks, field_name, made)
    return hooks


def rewrite_structural(program: ml.Program, profile: SemanticProfile) -> ml.Program:
    """Apply the profile's structural rewrites in catalog-code order."""
    for code, bound in profile.active:
        spec = VARIANTS_BY_CODE[code]
        if spec.rewrite_factory is not None:
            program = spec.rewrite_factory(dict(bound))(program)
    return program


def run_variant(
    program: ml.Program,
    profile: SemanticProfile,
    limits: Optional[Limits] = None,
    expected_prefix: Optional[tuple[str, ...]] = None,
    expected_exact_length: bool = False,
) -> ExecResult:
    """Rewrite, install hooks, and execute under the given mental model.

    ``expected_prefix`` is a diagnosis-internal fast path: a run whose
    transcript deviates from it stops with a prefix_mismatch status.
    """
    rewritten = rewrite_structural(program, profile)
    machine = Machine(
        rewritten,
        limits=limits,
        hooks=build_hooks(profile),
        expected_prefix=expected_prefix,
        expected_exact_length=expected_exact_length,
    )
    return machine.run()


# ---------------------------------------------------------------------------
# Profile literals
# ---------------------------------------------------------------------------

_LITERAL_ITEM = re.compile(r"^(?P<code>[A-Za-z0-9.]+)(?:\((?P<params>[^()]*)\))?$")


def parse_profile_literal(text: str) -> list[tuple[str, dict[str, object]]]:
    """Parse "ITER.3.b.ii.A,ITER.5.a.i(k=2)" into (code, params) pairs."""
    items: list[tuple[str, dict[str, object]]] = []
    text = text.strip()
    if not text:
        return items
    # split on commas not inside parentheses
    parts: list[str] = []
    depth = 0
    current = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ProfileError(f"unbalanced parentheses in profile literal {text!r}")
        if ch == "," and depth == 0:
            parts.append(current)
            current = ""
        else:
            current += ch
    if depth != 0:
        raise ProfileError(f"unbalanced parentheses in profile literal {text!r}")
    parts.append(current)
    for part in parts:
        part = part.strip()
        if not part:
            raise ProfileError(f"empty item in profile literal {text!r}")
        match = _LITERAL_ITEM.match(part)
        if match is None:
            raise ProfileError(f"cannot parse profile item {part!r}")
        params: dict[str, object] = {}
        raw = match.group("params")
        if raw is not None:
            for binding in raw.split(","):
                binding = binding.strip()
                if not binding:
                    continue
                if "=" not in binding:
                    raise ProfileError(f"parameter binding {binding!r} must look like name=value")
                name, value = binding.split("=", 1)
                name = name.strip()
                value = value.strip()
                params[name] = int(value) if re.fullmatch(r"-?[0-9]+", value) else value
        items.append((match.group("code"), params))
    return items


def format_profile(profile: SemanticProfile) -> str:
    parts = []
    for code, bound in profile.active:
        if bound:
            inner = ",".join(f"{name}={value}" for name, value in bound)
            parts.append(f"{code}({inner})")
        else:
            parts.append(code)
    return ",".join(parts)
