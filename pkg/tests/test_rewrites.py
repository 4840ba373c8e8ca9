"""Structural rewrite tests: shape transformations and id hygiene."""

import mistrace as mt
import mistrace.minilang as ml
import mistrace.rewrites as rw


def norm(program):
    return mt.pretty_print(program)


class TestSelectionRewrites:
    def test_flatten_nested_ifs(self):
        prog = mt.parse("if (a > 0) { if (b > 0) { print(1); } }")
        out = rw.flatten_nested_ifs(prog)
        want = mt.parse("if (a > 0) { } if (b > 0) { print(1); }")
        assert ml.structurally_equal(out, want)

    def test_flatten_triple_nesting(self):
        prog = mt.parse("if (a > 0) { if (b > 0) { if (c > 0) { print(1); } } }")
        out = rw.flatten_nested_ifs(prog)
        want = mt.parse("if (a > 0) { } if (b > 0) { } if (c > 0) { print(1); }")
        assert ml.structurally_equal(out, want)

    def test_nest_consecutive(self):
        prog = mt.parse("if (a > 0) { print(1); } if (b > 0) { print(2); }")
        out = rw.nest_consecutive_ifs(prog)
        want = mt.parse("if (a > 0) { print(1); if (b > 0) { print(2); } }")
        assert ml.structurally_equal(out, want)

    def test_nest_run_of_three_folds_rightward(self):
        prog = mt.parse(
            "if (a > 0) { print(1); } if (b > 0) { print(2); } if (c > 0) { print(3); }"
        )
        out = rw.nest_consecutive_ifs(prog)
        want = mt.parse(
            "if (a > 0) { print(1); if (b > 0) { print(2); if (c > 0) { print(3); } } }"
        )
        assert ml.structurally_equal(out, want)

    def test_fuse_complementary(self):
        prog = mt.parse("if (c > 0) { x = 1; } if (!(c > 0)) { x = 2; }")
        out = rw.fuse_complementary_ifs(prog)
        want = mt.parse("if (c > 0) { x = 1; } else { x = 2; }")
        assert ml.structurally_equal(out, want)

    def test_fuse_ignores_non_complements(self):
        prog = mt.parse("if (c > 0) { x = 1; } if (c > 1) { x = 2; }")
        assert ml.structurally_equal(rw.fuse_complementary_ifs(prog), prog)

    def test_absorb_following(self):
        prog = mt.parse("if (x > 0) { print(1); } print(2); print(3);")
        out = rw.absorb_following_into_selection(prog, 1)
        want = mt.parse("if (x > 0) { print(1); print(2); } print(3);")
        assert ml.structurally_equal(out, want)

    def test_absorb_prefers_else_branch(self):
        prog = mt.parse("if (x > 0) { print(1); } else { print(2); } print(3);")
        out = rw.absorb_following_into_selection(prog, 1)
        want = mt.parse("if (x > 0) { print(1); } else { print(2); print(3); }")
        assert ml.structurally_equal(out, want)

    def test_hoist_branch_tails(self):
        prog = mt.parse("if (x > 0) { x = 2; print(1); } else { print(2); }")
        out = rw.hoist_branch_tails(prog)
        want = mt.parse("if (x > 0) { x = 2; } else { } print(1); print(2);")
        assert ml.structurally_equal(out, want)

    def test_next_statement_becomes_else(self):
        prog = mt.parse("if (x > 0) { print(1); } print(2); print(3);")
        out = rw.next_statement_becomes_else(prog)
        want = mt.parse("if (x > 0) { print(1); } else print(2); print(3);")
        assert ml.structurally_equal(out, want)


class TestIterationRewrites:
    NESTED = (
        "for (i = 0; i < 2; i = i + 1) { for (j = 0; j < 3; j = j + 1) "
        '{ print("X", i, j); } }'
    )

    def test_unroll_strips_all_loops(self):
        prog = mt.parse(self.NESTED)
        out = rw.unroll_loops_once(prog)
        want = mt.parse('i = 0; j = 0; print("X", i, j);')
        # headers are dropped entirely, including the inits
        assert ml.structurally_equal(out, mt.parse('print("X", i, j);'))
        del want

    def test_swap_headers(self):
        prog = mt.parse(self.NESTED)
        out = rw.swap_loop_headers(prog)
        want = mt.parse(
            "for (j = 0; j < 3; j = j + 1) { for (i = 0; i < 2; i = i + 1) "
            '{ print("X", i, j); } }'
        )
        assert ml.structurally_equal(out, want)

    def test_sequence_nested(self):
        prog = mt.parse(self.NESTED)
        out = rw.sequence_nested_loops(prog)
        want = mt.parse(
            "for (i = 0; i < 2; i = i + 1) { } "
            'for (j = 0; j < 3; j = j + 1) { print("X", i, j); }'
        )
        assert ml.structurally_equal(out, want)

    def test_fuse_nested(self):
        prog = mt.parse(self.NESTED)
        out = rw.fuse_nested_loops(prog)
        want = mt.parse(
            "i = 0; j = 0; while (i < 2 && j < 3) "
            '{ print("X", i, j); i = i + 1; j = j + 1; }'
        )
        assert ml.structurally_equal(out, want)

    def test_merge_on_inner_header(self):
        prog = mt.parse(self.NESTED)
        out = rw.merge_on_inner_header(prog)
        want = mt.parse('i = 0; for (j = 0; j < 3; j = j + 1) { print("X", i, j); }')
        assert ml.structurally_equal(out, want)

    def test_hoist_loop_tail(self):
        prog = mt.parse("while (i < 2) { i = i + 1; print(i); }")
        out = rw.hoist_loop_body_tail(prog)
        want = mt.parse("while (i < 2) { i = i + 1; } print(i);")
        assert ml.structurally_equal(out, want)

    def test_absorb_following_into_loop(self):
        prog = mt.parse("while (i < 2) { i = i + 1; } print(1); print(2);")
        out = rw.absorb_following_into_loop(prog, 2)
        want = mt.parse("while (i < 2) { i = i + 1; print(1); print(2); }")
        assert ml.structurally_equal(out, want)


class TestRewriteHygiene:
    def test_untouched_nodes_keep_ids(self):
        prog = mt.parse("x = 1; if (a > 0) { if (b > 0) { print(1); } } y = 2;")
        out = rw.flatten_nested_ifs(prog)
        assert out.statements[0].node_id == prog.statements[0].node_id
        assert out.statements[-1].node_id == prog.statements[-1].node_id
        # the lifted inner if is the same node object
        inner = prog.statements[1].branches[0].body.statements[0]
        assert out.statements[2] is inner

    def test_new_nodes_get_fresh_ids(self):
        prog = mt.parse(TestIterationRewrites.NESTED)
        out = rw.fuse_nested_loops(prog)
        old_ids = {n.node_id for n in ml.iter_nodes(prog)}
        new_ids = [n.node_id for n in ml.iter_nodes(out)]
        assert len(new_ids) == len(set(new_ids))
        fused = out.statements[-1]
        assert fused.node_id not in old_ids

    def test_inapplicable_rewrites_are_noops(self):
        prog = mt.parse('print("plain");')
        for fn in (
            rw.flatten_nested_ifs,
            rw.nest_consecutive_ifs,
            rw.fuse_complementary_ifs,
            rw.hoist_branch_tails,
            rw.next_statement_becomes_else,
            rw.unroll_loops_once,
            rw.hoist_loop_body_tail,
            rw.fuse_nested_loops,
            rw.sequence_nested_loops,
            rw.swap_loop_headers,
            rw.merge_on_inner_header,
        ):
            assert ml.structurally_equal(fn(prog), prog)
