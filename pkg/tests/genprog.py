"""Seeded grammar-based program generator for property tests.

Deterministic: the same seed yields the same source text.  Nesting is
bounded (depth <= 4) and loops are biased toward bounded counting shapes
so most runs terminate; divergent or faulting programs are still legal
outputs, the execution caps bound them.
"""

from __future__ import annotations

import random

VARS = ["i", "j", "k", "x", "y"]
TAGS = ["A", "B", "C", "D", "E"]


class ProgramGen:
    def __init__(self, seed: int, max_depth: int = 4):
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.defined: set[str] = set()
        self.tag_counter = 0

    # --- expressions ---

    def atom(self) -> str:
        if self.defined and self.rng.random() < 0.55:
            return self.rng.choice(sorted(self.defined))
        return str(self.rng.randint(-3, 9))

    def arith(self, depth: int) -> str:
        if depth <= 0 or self.rng.random() < 0.5:
            return self.atom()
        op = self.rng.choice(["+", "+", "+", "-", "-", "-", "*", "*", "/", "%"])
        return f"({self.arith(depth - 1)} {op} {self.arith(depth - 1)})"

    def cond(self, depth: int = 1) -> str:
        op = self.rng.choice(["<", "<=", ">", ">=", "==", "!="])
        base = f"{self.arith(1)} {op} {self.arith(1)}"
        roll = self.rng.random()
        if depth > 0 and roll < 0.15:
            joiner = self.rng.choice(["&&", "||"])
            return f"({base}) {joiner} ({self.cond(depth - 1)})"
        if roll < 0.25:
            return f"!({base})"
        return base

    # --- statements ---

    def assign(self) -> str:
        var = self.rng.choice(VARS)
        if var in self.defined and self.rng.random() < 0.4:
            form = self.rng.choice(["compound", "incdec"])
            if form == "incdec":
                op = self.rng.choice(["++", "--"])
                return f"{op}{var};" if self.rng.random() < 0.5 else f"{var}{op};"
            op = self.rng.choice(["+=", "-=", "*="])
            return f"{var} {op} {self.atom()};"
        self.defined.add(var)
        return f"{var} = {self.arith(1)};"

    def print_stmt(self) -> str:
        self.tag_counter += 1
        tag = f"{self.rng.choice(TAGS)}{self.tag_counter}"
        args = [f'"{tag}"']
        for _ in range(self.rng.randint(0, 2)):
            args.append(self.atom())
        return f"print({', '.join(args)});"

    def counting_header(self) -> tuple[str, str, str]:
        var = self.rng.choice(VARS)
        self.defined.add(var)
        start = self.rng.randint(-2, 3)
        span = self.rng.randint(1, 5)
        step = self.rng.randint(1, 3)
        if self.rng.random() < 0.5:
            init = f"{var} = {start}"
            cond = f"{var} {self.rng.choice(['<', '<=', '!='])} {start + span * step}"
            update = f"{var} = {var} + {step}" if self.rng.random() < 0.7 else f"{var}++"
        else:
            init = f"{var} = {start + span * step}"
            cond = f"{var} {self.rng.choice(['>', '>='])} {start}"
            update = f"{var} = {var} - {step}" if self.rng.random() < 0.7 else f"{var}--"
        return init, cond, update

    def body(self, depth: int, in_loop: bool) -> list[str]:
        count = self.rng.randint(1, 3 if depth > 1 else 2)
        lines: list[str] = []
        for _ in range(count):
            lines.extend(self.stmt(depth, in_loop))
        return lines

    def braced(self, depth: int, in_loop: bool) -> list[str]:
        inner = self.body(depth, in_loop)
        return ["{"] + ["  " + line for line in inner] + ["}"]

    def if_stmt(self, depth: int, in_loop: bool) -> list[str]:
        lines = [f"if ({self.cond()})"] + self.braced(depth - 1, in_loop)
        roll = self.rng.random()
        if roll < 0.25:
            lines.append(f"else if ({self.cond()})")
            lines.extend(self.braced(depth - 1, in_loop))
        if roll < 0.5:
            lines.append("else")
            lines.extend(self.braced(depth - 1, in_loop))
        return lines

    def loop_stmt(self, depth: int) -> list[str]:
        init, cond, update = self.counting_header()
        kind = self.rng.choice(["for", "while", "do"])
        if kind == "for":
            lines = [f"for ({init}; {cond}; {update})"]
            lines.extend(self.braced(depth - 1, True))
            return lines
        body = self.body(depth - 1, True)
        body.append(f"{update};")
        block = ["{"] + ["  " + line for line in body] + ["}"]
        if kind == "while":
            return [f"{init};", f"while ({cond})"] + block
        return [f"{init};", "do"] + block + [f"while ({cond});"]

    def stmt(self, depth: int, in_loop: bool) -> list[str]:
        roll = self.rng.random()
        if depth <= 1:
            if in_loop and roll < 0.06:
                return [self.rng.choice(["break;", "continue;"])]
            if roll < 0.45:
                return [self.assign()]
            return [self.print_stmt()]
        if in_loop and roll < 0.05:
            return [self.rng.choice(["break;", "continue;"])]
        if roll < 0.32:
            return [self.assign()]
        if roll < 0.58:
            return [self.print_stmt()]
        if roll < 0.78:
            return self.if_stmt(depth, in_loop)
        if roll < 0.96:
            return self.loop_stmt(depth)
        inner = self.body(depth - 1, in_loop)
        return ["{"] + ["  " + line for line in inner] + ["}"]

    def program(self) -> str:
        if self.rng.random() < 0.7:
            self.defined.update(VARS)
        else:
            self.defined.update(self.rng.sample(VARS, self.rng.randint(1, 3)))
        lines = [f"{v} = {self.rng.randint(-2, 9)};" for v in sorted(self.defined)]
        for _ in range(self.rng.randint(2, 6)):
            lines.extend(self.stmt(self.max_depth, False))
        lines.append(self.print_stmt())
        return "\n".join(lines) + "\n"


def generate_source(seed: int, max_depth: int = 4) -> str:
    return ProgramGen(seed, max_depth).program()
