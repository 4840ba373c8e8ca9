"""Structural program rewrites used by body-extent and nesting variants.

Each rewrite transforms every applicable site in one pre-order pass:
statement lists are rewritten before their children, and nodes that a
rewrite does not touch keep their identity (and node id).  New nodes get
fresh ids above the program's current maximum.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Callable, Optional

from . import minilang as ml


class IdGen:
    def __init__(self, start: int):
        self.next_id = start

    def mint(self) -> int:
        i = self.next_id
        self.next_id += 1
        return i


ListRewrite = Callable[[tuple[ml.Stmt, ...], IdGen], tuple[ml.Stmt, ...]]


def _extend_body(body: ml.Body, extra: tuple[ml.Stmt, ...]) -> ml.Body:
    stmts = body.statements + extra
    return ml.Body(stmts, braced=body.braced or len(stmts) != 1)


def _trim_body(body: ml.Body, stmts: tuple[ml.Stmt, ...]) -> ml.Body:
    return ml.Body(stmts, braced=body.braced or len(stmts) != 1)


def _rebuild_body(body: ml.Body, fn: ListRewrite, ids: IdGen) -> ml.Body:
    new_stmts = _apply_to_list(body.statements, fn, ids)
    if new_stmts is body.statements:
        return body
    return ml.Body(new_stmts, braced=body.braced or len(new_stmts) != 1)


def _rebuild_stmt(stmt: ml.Stmt, fn: ListRewrite, ids: IdGen) -> ml.Stmt:
    if isinstance(stmt, ml.If):
        branches = tuple(
            ml.Branch(b.cond, _rebuild_body(b.body, fn, ids)) for b in stmt.branches
        )
        else_body = (
            _rebuild_body(stmt.else_body, fn, ids) if stmt.else_body is not None else None
        )
        if else_body is stmt.else_body and all(
            nb.body is ob.body for nb, ob in zip(branches, stmt.branches)
        ):
            return stmt
        return replace(stmt, branches=branches, else_body=else_body)
    if isinstance(stmt, (ml.While, ml.DoWhile, ml.For)):
        body = _rebuild_body(stmt.body, fn, ids)
        return stmt if body is stmt.body else replace(stmt, body=body)
    if isinstance(stmt, ml.Block):
        stmts = _apply_to_list(stmt.statements, fn, ids)
        return stmt if stmts is stmt.statements else replace(stmt, statements=stmts)
    return stmt


def _apply_to_list(stmts: tuple[ml.Stmt, ...], fn: ListRewrite, ids: IdGen) -> tuple[ml.Stmt, ...]:
    new = fn(stmts, ids)
    rebuilt = tuple(_rebuild_stmt(s, fn, ids) for s in new)
    if len(rebuilt) == len(stmts) and all(a is b for a, b in zip(rebuilt, stmts)):
        return stmts
    return rebuilt


def rewrite_lists(program: ml.Program, fn: ListRewrite) -> ml.Program:
    ids = IdGen(ml.max_node_id(program) + 1)
    new = _apply_to_list(program.statements, fn, ids)
    return program if new is program.statements else ml.Program(new)


def _first_direct_inner_loop(loop: ml.Stmt) -> Optional[int]:
    for i, s in enumerate(loop.body.statements):
        if isinstance(s, ml.LOOP_TYPES):
            return i
    return None


def _loop_header(loop: ml.Stmt):
    """(kind, init, cond, update) of a loop node."""
    if isinstance(loop, ml.While):
        return ("while", None, loop.cond, None)
    if isinstance(loop, ml.DoWhile):
        return ("do-while", None, loop.cond, None)
    return ("for", loop.init, loop.cond, loop.update)


def _make_loop(header, body: ml.Body, ids: IdGen, loc: ml.Loc) -> ml.Stmt:
    kind, init, cond, update = header
    if kind == "while":
        assert cond is not None
        return ml.While(cond, body, node_id=ids.mint(), loc=loc)
    if kind == "do-while":
        assert cond is not None
        return ml.DoWhile(body, cond, node_id=ids.mint(), loc=loc)
    return ml.For(init, cond, update, body, node_id=ids.mint(), loc=loc)


# --- selection rewrites ---

def absorb_following_into_selection(program: ml.Program, k: int) -> ml.Program:
    """The k statements after a selection move into its final branch."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        i = 0
        while i < len(stmts):
            s = stmts[i]
            i += 1
            if isinstance(s, ml.If) and i < len(stmts):
                take = stmts[i : i + k]
                i += len(take)
                if s.else_body is not None:
                    s = replace(s, else_body=_extend_body(s.else_body, take))
                else:
                    branches = s.branches[:-1] + (
                        ml.Branch(s.branches[-1].cond, _extend_body(s.branches[-1].body, take)),
                    )
                    s = replace(s, branches=branches)
            out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)


def hoist_branch_tails(program: ml.Program) -> ml.Program:
    """The last statement of every branch body moves after the selection."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        for s in stmts:
            if isinstance(s, ml.If):
                hoisted: list[ml.Stmt] = []
                branches = []
                for br in s.branches:
                    if br.body.statements:
                        hoisted.append(br.body.statements[-1])
                        branches.append(
                            ml.Branch(br.cond, _trim_body(br.body, br.body.statements[:-1]))
                        )
                    else:
                        branches.append(br)
                else_body = s.else_body
                if else_body is not None and else_body.statements:
                    hoisted.append(else_body.statements[-1])
                    else_body = _trim_body(else_body, else_body.statements[:-1])
                if hoisted:
                    out.append(replace(s, branches=tuple(branches), else_body=else_body))
                    out.extend(hoisted)
                    continue
            out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)


def next_statement_becomes_else(program: ml.Program) -> ml.Program:
    """For an else-less if, the single following statement becomes else."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        i = 0
        while i < len(stmts):
            s = stmts[i]
            i += 1
            if isinstance(s, ml.If) and s.else_body is None and i < len(stmts):
                nxt = stmts[i]
                i += 1
                s = replace(s, else_body=ml.Body((nxt,), braced=False))
            out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)


def fuse_complementary_ifs(program: ml.Program) -> ml.Program:
    """Two adjacent simple ifs with complementary conditions fuse to if/else."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        i = 0
        while i < len(stmts):
            s = stmts[i]
            i += 1
            if (
                ml.is_simple_if(s)
                and i < len(stmts)
                and ml.is_simple_if(stmts[i])
                and ml.conditions_complementary(s.branches[0].cond, stmts[i].branches[0].cond)
            ):
                second = stmts[i]
                i += 1
                s = replace(s, else_body=second.branches[0].body)
            out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)


def flatten_nested_ifs(program: ml.Program) -> ml.Program:
    """An if nested in another's branch lifts to a sibling after the outer."""

    def lift_direct(node: ml.If) -> tuple[ml.If, list[ml.Stmt]]:
        lifted: list[ml.Stmt] = []
        branches = []
        for br in node.branches:
            kept = tuple(s for s in br.body.statements if not isinstance(s, ml.If))
            lifted.extend(s for s in br.body.statements if isinstance(s, ml.If))
            branches.append(
                br if kept == br.body.statements else ml.Branch(br.cond, _trim_body(br.body, kept))
            )
        else_body = node.else_body
        if else_body is not None:
            kept = tuple(s for s in else_body.statements if not isinstance(s, ml.If))
            lifted.extend(s for s in else_body.statements if isinstance(s, ml.If))
            if kept != else_body.statements:
                else_body = _trim_body(else_body, kept)
        if not lifted:
            return node, []
        return replace(node, branches=tuple(branches), else_body=else_body), lifted

    def fn(stmts, ids):
        work = list(stmts)
        idx = 0
        while idx < len(work):
            s = work[idx]
            if isinstance(s, ml.If):
                s2, lifted = lift_direct(s)
                work[idx] = s2
                if lifted:
                    work[idx + 1 : idx + 1] = lifted
            idx += 1
        return tuple(work)

    return rewrite_lists(program, fn)


def nest_consecutive_ifs(program: ml.Program) -> ml.Program:
    """Runs of adjacent ifs fold so each nests in its predecessor's then-branch."""

    def fold(run: list[ml.If]) -> ml.If:
        acc = run[-1]
        for s in reversed(run[:-1]):
            first = s.branches[0]
            acc = replace(
                s,
                branches=(ml.Branch(first.cond, _extend_body(first.body, (acc,))),)
                + s.branches[1:],
            )
        return acc

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        i = 0
        while i < len(stmts):
            if isinstance(stmts[i], ml.If):
                j = i
                while j < len(stmts) and isinstance(stmts[j], ml.If):
                    j += 1
                run = list(stmts[i:j])
                out.append(fold(run) if len(run) >= 2 else run[0])
                i = j
            else:
                out.append(stmts[i])
                i += 1
        return tuple(out)

    return rewrite_lists(program, fn)


# --- iteration rewrites ---

def unroll_loops_once(program: ml.Program) -> ml.Program:
    """Every loop node is replaced by its body statements, header dropped."""

    def fn(stmts, ids):
        work = list(stmts)
        idx = 0
        while idx < len(work):
            s = work[idx]
            if isinstance(s, ml.LOOP_TYPES):
                work[idx : idx + 1] = list(s.body.statements)
                continue  # re-examine: spliced statements may be loops
            idx += 1
        return tuple(work)

    return rewrite_lists(program, fn)


def hoist_loop_body_tail(program: ml.Program) -> ml.Program:
    """The last statement of each loop body moves after the loop."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        for s in stmts:
            if isinstance(s, ml.LOOP_TYPES) and s.body.statements:
                tail = s.body.statements[-1]
                out.append(replace(s, body=_trim_body(s.body, s.body.statements[:-1])))
                out.append(tail)
            else:
                out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)


def absorb_following_into_loop(program: ml.Program, k: int) -> ml.Program:
    """The k statements after a loop move into the end of its body."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        i = 0
        while i < len(stmts):
            s = stmts[i]
            i += 1
            if isinstance(s, ml.LOOP_TYPES) and i < len(stmts):
                take = stmts[i : i + k]
                i += len(take)
                s = replace(s, body=_extend_body(s.body, take))
            out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)


def fuse_nested_loops(program: ml.Program) -> ml.Program:
    """A loop and its first directly nested loop merge into one while loop:
    both initializations run first, continuation needs both conditions, and
    both updates run at the end of every cycle."""

    def fn(stmts, ids):
        work = list(stmts)
        idx = 0
        while idx < len(work):
            s = work[idx]
            if isinstance(s, ml.LOOP_TYPES):
                inner_at = _first_direct_inner_loop(s)
                if inner_at is not None:
                    inner = s.body.statements[inner_at]
                    _, o_init, o_cond, o_update = _loop_header(s)
                    _, i_init, i_cond, i_update = _loop_header(inner)
                    loc = s.loc
                    conds = [c for c in (o_cond, i_cond) if c is not None]
                    if len(conds) == 2:
                        cond: ml.Expr = ml.Binary("&&", conds[0], conds[1], node_id=ids.mint(), loc=loc)
                    elif len(conds) == 1:
                        cond = conds[0]
                    else:
                        cond = ml.BoolLit(True, node_id=ids.mint(), loc=loc)
                    body_stmts = (
                        s.body.statements[:inner_at]
                        + inner.body.statements
                        + s.body.statements[inner_at + 1 :]
                    )
                    body_stmts += tuple(u for u in (o_update, i_update) if u is not None)
                    fused = ml.While(
                        cond, ml.Body(body_stmts, braced=True), node_id=ids.mint(), loc=loc
                    )
                    inits = [x for x in (o_init, i_init) if x is not None]
                    work[idx : idx + 1] = inits + [fused]
                    continue  # the fused loop may still contain a direct loop
            idx += 1
        return tuple(work)

    return rewrite_lists(program, fn)


def sequence_nested_loops(program: ml.Program) -> ml.Program:
    """The first directly nested loop runs once, standalone, after its outer."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        for s in stmts:
            if isinstance(s, ml.LOOP_TYPES):
                inner_at = _first_direct_inner_loop(s)
                if inner_at is not None:
                    inner = s.body.statements[inner_at]
                    kept = s.body.statements[:inner_at] + s.body.statements[inner_at + 1 :]
                    out.append(replace(s, body=_trim_body(s.body, kept)))
                    out.append(inner)
                    continue
            out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)


def swap_loop_headers(program: ml.Program) -> ml.Program:
    """Outer and first directly nested loop exchange headers in place."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        for s in stmts:
            if isinstance(s, ml.LOOP_TYPES):
                inner_at = _first_direct_inner_loop(s)
                if inner_at is not None:
                    inner = s.body.statements[inner_at]
                    new_inner = _make_loop(_loop_header(s), inner.body, ids, inner.loc)
                    outer_body = _trim_body(
                        s.body,
                        s.body.statements[:inner_at]
                        + (new_inner,)
                        + s.body.statements[inner_at + 1 :],
                    )
                    out.append(_make_loop(_loop_header(inner), outer_body, ids, s.loc))
                    continue
            out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)


def merge_on_inner_header(program: ml.Program) -> ml.Program:
    """One loop under the inner header: the outer header's condition and
    update are dropped (its initialization stays in front), and the inner
    loop's body splices into the outer body in place."""

    def fn(stmts, ids):
        out: list[ml.Stmt] = []
        for s in stmts:
            if isinstance(s, ml.LOOP_TYPES):
                inner_at = _first_direct_inner_loop(s)
                if inner_at is not None:
                    inner = s.body.statements[inner_at]
                    _, o_init, _, _ = _loop_header(s)
                    body_stmts = (
                        s.body.statements[:inner_at]
                        + inner.body.statements
                        + s.body.statements[inner_at + 1 :]
                    )
                    merged = _make_loop(
                        _loop_header(inner),
                        ml.Body(body_stmts, braced=True),
                        ids,
                        s.loc,
                    )
                    if o_init is not None:
                        out.append(o_init)
                    out.append(merged)
                    continue
            out.append(s)
        return tuple(out)

    return rewrite_lists(program, fn)
