"""One behavioral fixture per executable catalog leaf.

Each row: (code, params, source, expected transcript, expected status).
The expected transcripts were worked out by hand from the operational
rule of each leaf before running them, and every one differs from the
reference transcript of its program (asserted in the test suite).
Comments sketch the hand trace where it is not obvious.
"""

FIXTURES = [
    # --- selection ---

    # SEL.1.a.i: both branches execute, then C still follows.
    ("SEL.1.a.i", {},
     'x = 1; if (x > 0) { print("A"); } else { print("B"); } print("C");',
     ("A", "B", "C"), "completed"),

    # SEL.1.a.ii default branch=last: the single cond-branch is forced
    # although its condition is false; else never runs.
    ("SEL.1.a.ii", {},
     'x = 0; if (x > 0) { print("A"); } else { print("B"); }',
     ("A",), "completed"),

    # SEL.1.a.ii branch=else: the else body is forced although x>0 holds.
    ("SEL.1.a.ii", {"branch": "else"},
     'x = 1; if (x > 0) { print("A"); } else { print("B"); }',
     ("B",), "completed"),

    # SEL.1.b.i: x>0 and x>2 are both true, so both branches run.
    ("SEL.1.b.i", {},
     'x = 5; if (x > 0) { print("P"); } else if (x > 2) { print("Q"); } else { print("R"); }',
     ("P", "Q"), "completed"),

    # SEL.1.b.ii: first condition false abandons the chain; else skipped.
    ("SEL.1.b.ii", {},
     'x = 0; if (x > 0) { print("A"); } else { print("B"); } print("Z");',
     ("Z",), "completed"),

    # SEL.1.c: negated selection picks the else-like outcome.
    ("SEL.1.c", {},
     'x = 1; if (x > 0) { print("A"); } else { print("B"); }',
     ("B",), "completed"),

    # SEL.2.a k=1: print("B") absorbed into the false branch, so only C runs.
    ("SEL.2.a", {},
     'x = 0; if (x > 0) { print("A"); } print("B"); print("C");',
     ("C",), "completed"),

    # SEL.2.a k=2: both following prints absorbed; nothing runs.
    ("SEL.2.a", {"k": 2},
     'x = 0; if (x > 0) { print("A"); } print("B"); print("C");',
     (), "completed"),

    # SEL.2.b: print("A") is hoisted out of the false branch and runs
    # unconditionally; x stays 0.
    ("SEL.2.b", {},
     'x = 0; if (x > 0) { x = 2; print("A"); } print("T", x);',
     ("A", "T 0"), "completed"),

    # SEL.3.b.i: false condition restarts the program; S repeats until the
    # output cap (outputs limited to 1000; prefix asserted separately).
    ("SEL.3.b.i", {},
     'print("S"); if (0 > 1) { print("A"); } print("B");',
     None, "output_cap"),

    # SEL.3.b.ii: false condition halts before B.
    ("SEL.3.b.ii", {},
     'x = 0; if (x > 1) { print("A"); } print("B");',
     (), "halted_by_variant"),

    # SEL.3.c.i: taken branch A, then else runs too.
    ("SEL.3.c.i", {},
     'x = 5; if (x > 1) { print("A"); } else { print("B"); }',
     ("A", "B"), "completed"),

    # SEL.3.c.ii: print("B") becomes the else-branch, so a true condition
    # suppresses it.
    ("SEL.3.c.ii", {},
     'x = 5; if (x > 1) { print("A"); } print("B");',
     ("A",), "completed"),

    # SEL.4.a.ii.A: if repeats like a while: L 3, L 2, L 1.
    ("SEL.4.a.ii.A", {},
     'x = 3; if (x > 0) { print("L", x); x = x - 1; }',
     ("L 3", "L 2", "L 1"), "completed"),

    # SEL.4.a.ii.B n=2 (default): two executions of the whole statement.
    ("SEL.4.a.ii.B", {},
     'x = 3; if (x > 0) { print("L", x); x = x - 1; }',
     ("L 3", "L 2"), "completed"),

    # SEL.4.a.ii.B n=3.
    ("SEL.4.a.ii.B", {"n": 3},
     'x = 3; if (x > 0) { print("L", x); x = x - 1; }',
     ("L 3", "L 2", "L 1"), "completed"),

    # SEL.4.b.i: false at the statement arms a watcher; x=3 makes it fire
    # before M prints.
    ("SEL.4.b.i", {},
     'x = 0; if (x > 2) { print("F", x); } x = 3; print("M"); x = 5;',
     ("F 3", "M"), "completed"),

    # SEL.4.b.ii: armed from the start, fires after x=3 even though the
    # condition is false when control reaches the if.
    ("SEL.4.b.ii", {},
     'x = 3; x = 0; if (x > 2) { print("F", x); } print("M");',
     ("F 3", "M"), "completed"),

    # SEL.4.c.i: branch runs speculatively (x=5, A), the hindsight check
    # 5<1 fails, everything rolls back.
    ("SEL.4.c.i", {},
     'x = 0; if (x < 1) { x = 5; print("A"); } print("E", x);',
     ("E 0",), "completed"),

    # SEL.4.c.i commit case: 0<1 holds after the branch, so it stays.
    ("SEL.4.c.i", {},
     'x = 5; if (x < 1) { x = 0; print("A"); } print("E", x);',
     ("A", "E 0"), "completed"),

    # SEL.4.c.ii.A.I: shadow x+=1 twice until 2>1; real from the print on.
    ("SEL.4.c.ii.A.I", {},
     'x = 0; if (x > 1) { x = x + 1; x = x + 1; print("A", x); } print("E", x);',
     ("A 2", "E 2"), "completed"),

    # SEL.4.c.ii.A.I on the P/Q body: P is shadow-suppressed, Q is real.
    ("SEL.4.c.ii.A.I", {},
     'x = 0; if (x > 1) { print("P"); x = x + 2; print("Q"); } print("E", x);',
     ("Q", "E 2"), "completed"),

    # SEL.4.c.ii.A.II: after firing, 0>1 turns false before B prints.
    ("SEL.4.c.ii.A.II", {},
     'x = 0; if (x > 1) { x = x + 2; print("A"); x = 0; print("B"); } print("E", x);',
     ("A", "E 0"), "completed"),

    # SEL.4.c.ii.B: first true point rolls back and replays the whole
    # body for real, so P prints too.
    ("SEL.4.c.ii.B", {},
     'x = 0; if (x > 1) { print("P"); x = x + 2; print("Q"); } print("E", x);',
     ("P", "Q", "E 2"), "completed"),

    # SEL.4.d.i (reverse): the x>3 branch is checked first and wins.
    ("SEL.4.d.i", {},
     'x = 5; if (x > 0) { print("A"); } else if (x > 3) { print("B"); } else { print("C"); }',
     ("B",), "completed"),

    # SEL.4.d.ii.A: branch sets x=-5, the re-check fails, else runs too.
    ("SEL.4.d.ii.A", {},
     'x = 1; if (x > 0) { x = -5; print("A"); } else { print("B"); }',
     ("A", "B"), "completed"),

    # SEL.4.d.ii.B: fused into if/else, so B is skipped although c<=0
    # holds after the body ran.
    ("SEL.4.d.ii.B", {},
     'c = 1; if (c > 0) { print("A"); c = 0; } if (c <= 0) { print("B"); }',
     ("A",), "completed"),

    # SEL.5.a.i: inner if lifted out; b>0 runs although a>0 failed.
    ("SEL.5.a.i", {},
     'a = 0; b = 1; if (a > 0) { if (b > 0) { print("X"); } } print("E");',
     ("X", "E"), "completed"),

    # SEL.5.a.ii: second if nested into the first, so a=0 hides B.
    ("SEL.5.a.ii", {},
     'a = 0; b = 1; if (a > 0) { print("A"); } if (b > 0) { print("B"); } print("E");',
     ("E",), "completed"),

    # SEL.5.b: inside the loop the then-branch always runs, else never.
    ("SEL.5.b", {},
     'i = 0; while (i < 2) { if (i > 100) { print("A", i); } else { print("B", i); } i = i + 1; }',
     ("A 0", "A 1"), "completed"),

    # --- iteration ---

    # ITER.1.a: loop header dropped; body runs once: L 7, then i=8.
    ("ITER.1.a", {},
     'i = 7; while (i < 9) { print("L", i); i = i + 1; } print("E", i);',
     ("L 7", "E 8"), "completed"),

    # ITER.1.b: one conditional pass of the while.
    ("ITER.1.b", {},
     'i = 3; while (i > 0) { print(i); i = i - 1; }',
     ("3",), "completed"),

    # ITER.1.d: trip count 3 counts statement executions cyclically, the
    # update applying after each: A 0, B 1, A 2.
    ("ITER.1.d", {},
     'for (i = 0; i < 3; i = i + 1) { print("A", i); print("B", i); }',
     ("A 0", "B 1", "A 2"), "completed"),

    # ITER.2.a.i: the print is hoisted out; the loop counts silently.
    ("ITER.2.a.i", {},
     'i = 0; while (i < 2) { i = i + 1; print("L", i); } print("E");',
     ("L 2", "E"), "completed"),

    # ITER.2.a.ii k=1: print("X") absorbed into the body.
    ("ITER.2.a.ii", {},
     'i = 0; while (i < 2) { print("L", i); i = i + 1; } print("X"); print("Y");',
     ("L 0", "X", "L 1", "X", "Y"), "completed"),

    # ITER.2.a.ii k=2: both following prints absorbed.
    ("ITER.2.a.ii", {"k": 2},
     'i = 0; while (i < 2) { print("L", i); i = i + 1; } print("X"); print("Y");',
     ("L 0", "X", "Y", "L 1", "X", "Y"), "completed"),

    # ITER.2.b.i: program halts once the loop finishes; E never prints.
    ("ITER.2.b.i", {},
     'i = 0; while (i < 1) { print("L"); i = i + 1; } print("E");',
     ("L",), "halted_by_variant"),

    # ITER.2.b.ii: false condition runs the adjacent print("E") and
    # re-checks forever (prefix asserted separately).
    ("ITER.2.b.ii", {},
     'i = 2; while (i > 0) { print("L", i); i = i - 1; } print("E"); print("F");',
     None, "output_cap"),

    # ITER.3.a.i: body skipped; only the update counts up to exit.
    ("ITER.3.a.i", {},
     'for (i = 0; i < 2; i = i + 1) { print("L", i); } print("E");',
     ("E",), "completed"),

    # ITER.3.a.ii: zero-trip loop still runs its body once.
    ("ITER.3.a.ii", {},
     'for (i = 0; i < 0; i = i + 1) { print("L", i); } print("E");',
     ("L 0", "E"), "completed"),

    # ITER.3.a.iii: no condition check; prints while the guard of the
    # inner if holds, then spins until the event cap.
    ("ITER.3.a.iii", {},
     'for (i = 0; i < 2; i = i + 1) { if (i < 3) { print("L", i); } }',
     None, "step_cap"),

    # ITER.3.a.iv: update skipped; L 0 repeats to the output cap.
    ("ITER.3.a.iv", {},
     'for (i = 0; i < 2; i = i + 1) { print("L", i); }',
     None, "output_cap"),

    # ITER.3.a.v: init skipped; the prior i=9 fails the condition at once.
    ("ITER.3.a.v", {},
     'i = 9; for (i = 0; i < 2; i = i + 1) { print("L", i); } print("E", i);',
     ("E 9",), "completed"),

    # ITER.3.b.i: first cycle uses the prior i=5, init replaces the first
    # update: L 5, L 0, L 2, L 4, L 6, then E 8.
    ("ITER.3.b.i", {},
     'i = 5; for (i = 0; i < 7; i = i + 2) { print("L", i); } print("E", i);',
     ("L 5", "L 0", "L 2", "L 4", "L 6", "E 8"), "completed"),

    # ITER.3.b.ii.A: update runs before each body: L 1, L 2.
    ("ITER.3.b.ii.A", {},
     'for (i = 0; i < 2; i = i + 1) { print("L", i); }',
     ("L 1", "L 2"), "completed"),

    # ITER.3.b.ii.B: prefix increment header triggers the same order.
    ("ITER.3.b.ii.B", {},
     'for (i = 0; i < 2; ++i) { print("L", i); }',
     ("L 1", "L 2"), "completed"),

    # ITER.3.b.iii: update runs first of all: L 1, exit at i=2, E 2.
    ("ITER.3.b.iii", {},
     'for (i = 0; i < 2; i = i + 1) { print("L", i); } print("E", i);',
     ("L 1", "E 2"), "completed"),

    # ITER.3.b.iv: after i=0 the during-body check fails, skipping B and
    # the update: A, B, A, E.
    ("ITER.3.b.iv", {},
     'i = 2; while (i > 0) { print("A"); i = i - 1; print("B"); } print("E");',
     ("A", "B", "A", "E"), "completed"),

    # ITER.3.b.v: first statement runs for i=0,1 then the second: A 0,
    # A 1, B 0, B 1, control variable parked at 2.
    ("ITER.3.b.v", {},
     'for (i = 0; i < 2; i = i + 1) { print("A", i); print("B", i); } print("E", i);',
     ("A 0", "A 1", "B 0", "B 1", "E 2"), "completed"),

    # ITER.4.a.i.A: +2 then -2 alternate; i oscillates 0,2,0,2 to the
    # output cap (prefix asserted separately).
    ("ITER.4.a.i.A", {},
     'for (i = 0; i < 3; i = i + 2) { print("L", i); }',
     None, "output_cap"),

    # ITER.4.a.i.B: the +3 step becomes +1.
    ("ITER.4.a.i.B", {},
     'for (i = 0; i < 6; i = i + 3) { print("L", i); }',
     ("L 0", "L 1", "L 2", "L 3", "L 4", "L 5"), "completed"),

    # ITER.4.a.i.C: i++ steps by two.
    ("ITER.4.a.i.C", {},
     'for (i = 0; i < 4; i++) { print("L", i); }',
     ("L 0", "L 2"), "completed"),

    # ITER.4.a.ii.A: the loop's shadow counter ignores the body's i=10,
    # so three iterations happen; the update re-syncs the real i.
    ("ITER.4.a.ii.A", {},
     'for (i = 0; i < 3; i = i + 1) { print("L", i); i = 10; } print("E", i);',
     ("L 0", "L 1", "L 2", "E 3"), "completed"),

    # ITER.4.a.ii.B: body reads the post-init value forever.
    ("ITER.4.a.ii.B", {},
     'for (i = 0; i < 3; i = i + 1) { print("L", i); } print("E", i);',
     ("L 0", "L 0", "L 0", "E 3"), "completed"),

    # ITER.4.b: s is buffered: body reads the entry value 0, the last
    # write (5) lands after exit.
    ("ITER.4.b", {},
     's = 0; for (i = 0; i < 2; i = i + 1) { s = s + 5; print("S", s); } print("E", s);',
     ("S 0", "S 0", "E 5"), "completed"),

    # ITER.5.a.i k=1: one extra full iteration past the false check.
    ("ITER.5.a.i", {},
     'for (i = 0; i < 2; i = i + 1) { print("L", i); } print("E", i);',
     ("L 0", "L 1", "L 2", "E 3"), "completed"),

    # ITER.5.a.i k=2.
    ("ITER.5.a.i", {"k": 2},
     'for (i = 0; i < 2; i = i + 1) { print("L", i); } print("E", i);',
     ("L 0", "L 1", "L 2", "L 3", "E 4"), "completed"),

    # ITER.5.a.ii.A: 3>5 is false at first, so the loop runs while false
    # and exits when 6>5 turns true.
    ("ITER.5.a.ii.A", {},
     'i = 3; while (i > 5) { print("L", i); i = i + 1; } print("E", i);',
     ("L 3", "L 4", "L 5", "E 6"), "completed"),

    # ITER.5.a.ii.B: 9>5 is true at once, so the until-reading exits
    # immediately.
    ("ITER.5.a.ii.B", {},
     'i = 9; while (i > 5) { print("L", i); i = i - 4; } print("E", i);',
     ("E 9",), "completed"),

    # ITER.5.a.iii.A: k>0&&k<5 is false for 9,7,5 (full iterations), true
    # at 3 (standard), false again at -1.
    ("ITER.5.a.iii.A", {},
     'for (k = 9; k > 0 && k < 5; k = k - 2) { print("L", k); } print("E", k);',
     ("L 9", "L 7", "L 5", "L 3", "L 1", "E -1"), "completed"),

    # ITER.5.a.iii.B: the seeking phase advances the update only.
    ("ITER.5.a.iii.B", {},
     'for (k = 9; k > 0 && k < 5; k = k - 2) { print("L", k); } print("E", k);',
     ("L 3", "L 1", "E -1"), "completed"),

    # ITER.5.b.i.A: i<2 read as i<=2 gives one extra iteration.
    ("ITER.5.b.i.A", {},
     'for (i = 0; i < 2; i = i + 1) { print("L", i); }',
     ("L 0", "L 1", "L 2"), "completed"),

    # ITER.5.b.i.B: i<3 read as i>3: 5>3 runs once, 3>3 exits.
    ("ITER.5.b.i.B", {},
     'i = 5; while (i < 3) { print("L", i); i = i - 2; } print("E", i);',
     ("L 5", "E 3"), "completed"),

    # ITER.6.a: fused loop checks both conditions and applies both
    # updates per cycle: X 0 0, X 1 1, exit when j<2 fails.
    ("ITER.6.a", {},
     'for (i = 0; i < 3; i = i + 1) { for (j = 0; j < 2; j = j + 1) { print("X", i, j); } }',
     ("X 0 0", "X 1 1"), "completed"),

    # ITER.6.b: outer runs without the inner, then the inner once with
    # the leftover i=2.
    ("ITER.6.b", {},
     'for (i = 0; i < 2; i = i + 1) { print("O", i); for (j = 0; j < 2; j = j + 1) { print("I", i, j); } }',
     ("O 0", "O 1", "I 2 0", "I 2 1"), "completed"),

    # ITER.6.c: headers swapped, so j drives the outer iteration order.
    ("ITER.6.c", {},
     'for (i = 0; i < 2; i = i + 1) { for (j = 0; j < 3; j = j + 1) { print("X", i, j); } }',
     ("X 0 0", "X 1 0", "X 0 1", "X 1 1", "X 0 2", "X 1 2"), "completed"),

    # ITER.6.d: outer makes one conditional pass; inner runs normally.
    ("ITER.6.d", {},
     'for (i = 0; i < 2; i = i + 1) { for (j = 0; j < 2; j = j + 1) { print("X", i, j); } }',
     ("X 0 0", "X 0 1"), "completed"),

    # ITER.6.e: one loop under the inner header (j=5;j>3;j--); the outer
    # init i=0 stays, outer cond/update are gone.
    ("ITER.6.e", {},
     'for (i = 0; i < 2; i = i + 1) { print("O", i); for (j = 5; j > 3; j = j - 1) { print("I", j); } }',
     ("O 0", "I 5", "O 0", "I 4"), "completed"),

    # ITER.6.f: the inner loop's first check fails at i=0, so B 0 is
    # abandoned; the outer update still runs.
    ("ITER.6.f", {},
     'for (i = 0; i < 2; i = i + 1) { print("A", i); for (j = i; j > 0; j = j - 1) { print("I", j); } print("B", i); } print("E");',
     ("A 0", "A 1", "I 1", "B 1", "E"), "completed"),

    # ITER.7.a.i: break acts as continue, skipping only print(1).
    ("ITER.7.a.i", {},
     'for (i = 0; i < 3; i = i + 1) { if (i == 1) { break; } print(i); }',
     ("0", "2"), "completed"),

    # ITER.7.a.ii: break halts the whole program.
    ("ITER.7.a.ii", {},
     'for (i = 0; i < 3; i = i + 1) { print("L", i); if (i > 0) { break; } } print("E");',
     ("L 0", "L 1"), "halted_by_variant"),

    # ITER.7.a.iii: break ignored; the loop runs out normally.
    ("ITER.7.a.iii", {},
     'for (i = 0; i < 3; i = i + 1) { print("L", i); if (i > 0) { break; } } print("E");',
     ("L 0", "L 1", "L 2", "E"), "completed"),

    # ITER.7.b.i: continue ignored; L 1 prints after all.
    ("ITER.7.b.i", {},
     'for (i = 0; i < 3; i = i + 1) { if (i == 1) { continue; } print("L", i); } print("E");',
     ("L 0", "L 1", "L 2", "E"), "completed"),
]

# Divergent fixtures assert a transcript prefix instead of full equality.
PREFIXES = {
    ("SEL.3.b.i", 0): ("S", "S", "S"),
    ("ITER.2.b.ii", 0): ("L 2", "L 1", "E", "E"),
    ("ITER.3.a.iii", 0): ("L 0", "L 1", "L 2"),
    ("ITER.3.a.iv", 0): ("L 0", "L 0", "L 0"),
    ("ITER.4.a.i.A", 0): ("L 0", "L 2", "L 0", "L 2"),
}
