"""Reference machine tests: evaluation, runs, snapshots, traces, caps."""

import json

import pytest

import mistrace as mt
import mistrace.exec_core as ec
import mistrace.minilang as ml


def expr(text: str):
    return ml.parse(f"x = {text};").statements[0].value


class TestEvalExpr:
    def test_relational(self):
        state = ec.State()
        assert ec.eval_expr(expr("3 < 5"), state) is True

    def test_unbound_read(self):
        with pytest.raises(ec.RuntimeFault) as info:
            ec.eval_expr(expr("x"), ec.State())
        assert info.value.kind == "uninitialized-read"

    def test_condition_on_state(self):
        state = ec.State()
        state.write("i", 10)
        assert ec.eval_expr(expr("i > 0"), state) is True

    def test_short_circuit(self):
        state = ec.State()
        state.write("a", 0)
        # the right operand would fault if evaluated
        assert ec.eval_expr(expr("a != 0 && 1 / a > 0"), state) is False
        assert ec.eval_expr(expr("a == 0 || 1 / a > 0"), state) is True

    def test_division_truncates_toward_zero(self):
        state = ec.State()
        assert ec.eval_expr(expr("-7 / 2"), state) == -3
        assert ec.eval_expr(expr("7 / -2"), state) == -3
        assert ec.eval_expr(expr("-7 % 2"), state) == -1

    def test_division_by_zero(self):
        with pytest.raises(ec.RuntimeFault) as info:
            ec.eval_expr(expr("1 / 0"), ec.State())
        assert info.value.kind == "div-by-zero"

    def test_overflow(self):
        state = ec.State()
        state.write("big", 2**62)
        with pytest.raises(ec.RuntimeFault) as info:
            ec.eval_expr(expr("big * 4"), state)
        assert info.value.kind == "overflow"

    def test_bool_arithmetic_is_type_error(self):
        with pytest.raises(ec.RuntimeFault) as info:
            ec.eval_expr(expr("true + 1"), ec.State())
        assert info.value.kind == "type-error"

    def test_truthiness(self):
        state = ec.State()
        state.write("n", 7)
        assert ec.eval_expr(expr("n && true"), state) is True
        assert ec.eval_expr(expr("0 || false"), state) is False


class TestRunReference:
    def test_flagship_transcript(self, birne_program):
        result = ec.run_reference(birne_program)
        assert result.transcript == ("Birne 10", "Birne 6", "Birne 2", "Apfel")
        assert result.status == "completed"

    def test_zero_iteration_loop(self):
        result = ec.run_reference(mt.parse("while (0 > 1) print(1);"))
        assert result.transcript == ()
        assert result.status == "completed"

    def test_divergent_loop_hits_step_cap(self):
        result = ec.run_reference(mt.parse("x = 1; while (x > 0) x = x + 1;"))
        assert result.status == "step_cap"

    def test_output_cap(self):
        result = ec.run_reference(mt.parse("while (1 > 0) print(1);"))
        assert result.status == "output_cap"
        assert len(result.transcript) == 1000

    def test_print_rendering(self):
        result = ec.run_reference(mt.parse('print("v", 3, true, -2, false);'))
        assert result.transcript == ("v 3 true -2 false",)

    def test_runtime_error_status(self):
        result = ec.run_reference(mt.parse("print(y);"))
        assert result.status == "runtime_error"
        assert result.error == "uninitialized-read"

    def test_do_while_runs_body_first(self):
        result = ec.run_reference(mt.parse("x = 0; do { print(x); } while (x > 0);"))
        assert result.transcript == ("0",)

    def test_break_and_continue(self):
        src = (
            "for (i = 0; i < 5; i = i + 1) {"
            " if (i == 1) { continue; }"
            " if (i == 3) { break; }"
            " print(i); }"
            ' print("done");'
        )
        result = ec.run_reference(mt.parse(src))
        assert result.transcript == ("0", "2", "done")

    def test_determinism_bit_for_bit(self, birne_program):
        a = ec.run_reference(birne_program)
        b = ec.run_reference(birne_program)
        assert a == b

    def test_compound_assign_and_incdec(self):
        result = ec.run_reference(mt.parse("x = 2; x += 3; x *= 2; x--; print(x);"))
        assert result.transcript == ("9",)


def replay_transcript(trace):
    """Independent projection of a trace to its visible transcript."""
    out = []
    for event in trace:
        if event.kind == "output" and not event.payload.get("shadow"):
            out.append(event.payload["text"])
        elif event.kind == "rolledback":
            del out[event.payload["to_output"]:]
    return tuple(out)


class TestTraceConsistency:
    def test_reference_projection(self, birne_program):
        result = ec.run_reference(birne_program)
        assert replay_transcript(result.trace) == result.transcript

    def test_projection_under_rollback_variant(self, registry):
        prog = mt.parse('x = 0; if (x < 1) { x = 5; print("A"); } print("E", x);')
        profile = mt.compile_profile(registry, ["SEL.4.c.i"])
        result = mt.run_variant(prog, profile)
        assert result.transcript == ("E 0",)
        assert any(e.kind == "rolledback" for e in result.trace)
        assert replay_transcript(result.trace) == result.transcript

    def test_trace_exportable_as_json(self, birne_program):
        result = ec.run_reference(birne_program)
        lines = [
            json.dumps({"seq": e.seq, "nodeId": e.node_id, "kind": e.kind, "payload": e.payload})
            for e in result.trace
        ]
        for line in lines:
            parsed = json.loads(line)
            assert {"seq", "nodeId", "kind", "payload"} == set(parsed)


class TestPhaseDiscipline:
    def test_for_loop_phase_pattern(self):
        prog = mt.parse("for (i = 0; i < 3; i = i + 1) { print(i); }")
        loop_id = prog.statements[0].node_id
        result = ec.run_reference(prog)
        phases = [
            e.payload["phase"]
            for e in result.trace
            if e.kind == "phase" and e.node_id == loop_id
        ]
        assert phases[0] == "init"
        rest = phases[1:]
        # Cond (Body Update)* groups, ending on the failing cond
        i = 0
        while i < len(rest):
            assert rest[i] == "cond"
            if i + 1 < len(rest):
                assert rest[i + 1] == "body" and rest[i + 2] == "update"
                i += 3
            else:
                i += 1
        assert rest[-1] == "cond"

    def test_do_while_enters_at_body(self):
        prog = mt.parse("x = 1; do { x = x - 1; } while (x > 0);")
        loop_id = prog.statements[1].node_id
        result = ec.run_reference(prog)
        phases = [
            e.payload["phase"]
            for e in result.trace
            if e.kind == "phase" and e.node_id == loop_id
        ]
        assert phases[0] == "body"


class TestSnapshots:
    def make_machine(self, src="x = 1;"):
        return ec.Machine(mt.parse(src))

    def test_restore_unbinds_variable(self):
        m = self.make_machine()
        token = m.snapshot()
        m.state.write("q", 5)
        m.restore(token)
        assert "q" not in m.state.vars

    def test_restore_truncates_transcript_keeps_trace(self):
        m = self.make_machine()
        token = m.snapshot()
        m.output(0, "spilled")
        assert m.transcript == ["spilled"]
        m.restore(token)
        assert m.transcript == []
        assert any(e.kind == "rolledback" for e in m.trace)
        assert any(e.kind == "output" for e in m.trace)

    def test_nested_snapshots_lifo(self):
        m = self.make_machine()
        outer = m.snapshot()
        m.state.write("a", 1)
        inner = m.snapshot()
        m.state.write("b", 2)
        m.restore(inner)
        assert m.state.vars == {"a": 1}
        m.restore(outer)
        assert m.state.vars == {}

    def test_stale_token(self):
        m = self.make_machine()
        outer = m.snapshot()
        inner = m.snapshot()
        m.restore(outer)  # discards inner
        with pytest.raises(ec.StaleSnapshotError):
            m.restore(inner)

    def test_discard_commits(self):
        m = self.make_machine()
        token = m.snapshot()
        m.state.write("a", 1)
        m.discard(token)
        assert m.state.vars == {"a": 1}
        with pytest.raises(ec.StaleSnapshotError):
            m.restore(token)


class TestLimits:
    def test_custom_caps(self):
        prog = mt.parse("while (1 > 0) print(1);")
        result = ec.run_reference(prog, ec.Limits(max_events=50, max_outputs=1000))
        assert result.status == "step_cap"
        assert len(result.trace) == 50
        result = ec.run_reference(prog, ec.Limits(max_events=10_000, max_outputs=5))
        assert result.status == "output_cap"
        assert result.transcript == ("1",) * 5
