from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from chowgw.cli import corpus_names, read_script
from chowgw.dsl import (DslEvalError, DslSyntaxError, parse, parse_expr, print_expr,
                        print_script, run_source)
from chowgw.dsl.nodes import (Assert, BinOp, BundleDecl, ClassDecl, Name, Neg, Num, Param,
                              Pow, ProductDecl, Query, QueryStmt, RingDecl, Script)

GOLDEN = Path(__file__).parent / "golden" / "corpus"

idents = st.sampled_from(["h", "g", "zeta", "x_1", "L", "eps", "tau0"])


def exprs():
    leaf = st.one_of(st.integers(0, 50).map(Num), idents.map(Name), st.just(Param()))
    return st.recursive(leaf, lambda sub: st.one_of(
        sub.map(Neg),
        st.tuples(st.sampled_from("+-*/"), sub, sub).map(lambda t: BinOp(*t)),
        st.tuples(sub, st.integers(0, 5)).map(lambda t: Pow(*t)),
        st.tuples(idents, sub).map(lambda t: Query("integrate", t[0], t[1])),
    ), max_leaves=12)


queries = st.one_of(
    st.just(Query("pairing")),
    st.integers(1, 9).map(lambda n: Query("betti", args=(("n", n),))),
    st.sampled_from(["table", "det"]).map(lambda k: Query(k, args=(("symbolic", None),))),
    st.tuples(st.integers(1, 6), st.integers(1, 5)).map(
        lambda t: Query("invariant", args=(("i", t[0]), ("d", t[1])))),
)

stmts = st.one_of(
    st.tuples(idents, st.lists(st.tuples(idents, st.integers(1, 3)), min_size=1, max_size=3),
              st.lists(st.tuples(exprs(), exprs()), max_size=2), st.integers(0, 5)).map(
        lambda t: RingDecl(t[0], tuple(t[1]), tuple(t[2]), t[3])),
    st.tuples(idents, st.lists(idents, min_size=2, max_size=3)).map(
        lambda t: ProductDecl(t[0], tuple(t[1]))),
    st.tuples(idents, idents, exprs(), exprs(), idents).map(lambda t: BundleDecl(*t)),
    st.tuples(idents, idents, exprs()).map(lambda t: ClassDecl(*t)),
    queries.map(QueryStmt),
    st.tuples(exprs(), exprs(), st.one_of(st.none(), idents)).map(lambda t: Assert(*t)),
)


@given(exprs())
@settings(max_examples=300)
def test_expr_round_trip(e):
    assert parse_expr(print_expr(e)) == e


@given(st.lists(stmts, max_size=6))
@settings(max_examples=150, deadline=None)
def test_script_round_trip(statements):
    s = Script(tuple(statements))
    text = print_script(s)
    assert parse(text) == s
    assert print_script(parse(text)) == text


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_round_trip(name):
    text = print_script(parse(read_script(f"corpus:{name}")))
    assert print_script(parse(text)) == text


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_passes_and_matches_golden(name):
    results = run_source(read_script(f"corpus:{name}"))
    assert results and all(r.ok for r in results)
    out = "".join(r.text + "\n" for r in results)
    assert out == "".join(r.text + "\n" for r in run_source(read_script(f"corpus:{name}")))
    assert out == (GOLDEN / f"{name}.out").read_text()


def test_corpus_is_complete():
    want = {"xi1_table", "xi2_table", "xi3_table", "xi4_table", "xi5_table", "xi6_table",
            "pairing", "a_coefficients", "invariants", "betti", "basis_det"}
    assert want <= set(corpus_names())


def test_parse_examples():
    s = parse("ring P2 { gen h:1; rel h^3 = 0; dim 2; }")
    assert len(s.statements) == 1 and isinstance(s.statements[0], RingDecl)
    s = parse("space P = projbundle(P2; c1 = -h, c2 = (n-1)*h^2);")
    assert isinstance(s.statements[0], BundleDecl)
    assert s.statements[0].c2 == BinOp("*", BinOp("-", Param(), Num(1)), Pow(Name("h"), 2))


def test_eval_examples():
    src = ("ring P2 { gen h:1; rel h^3 = 0; dim 2; }\n"
           "space P = projbundle(P2; c1 = -h, c2 = (n-1)*h^2);\n"
           "integrate(P; zeta * h^2);\n")
    (r,) = run_source(src)
    assert r.value == 1 and r.text == "integrate(P; zeta*h^2) = 1"
    assert run_source("") == []
    (r,) = run_source("pairing();")
    assert r.value == [[0, 1], [1, 0]]


def test_bundle_script_matches_pipeline():
    from chowgw import gw
    src = ("ring P2 { gen h:1; rel h^3 = 0; dim 2; }\n"
           "space P = projbundle(P2; c1 = -h, c2 = (n-1)*h^2);\n")
    from chowgw.dsl import Evaluator
    ev = Evaluator(src)
    ev.run(parse(src))
    assert ev.rings["P"].dump().splitlines()[1:] == gw.build_cycle(1).ambient.dump().splitlines()[1:]


def test_failed_assert_reports_both_sides():
    (r,) = run_source("assert 2*n == n + 1;")
    assert not r.ok
    assert "left = 2n" in r.text and "right = n+1" in r.text


@pytest.mark.parametrize("src,msg,line,col", [
    ("ring P { gen h:1 dim 2; }", "expected ';'", 1, 18),
    ("ring ring { gen h:1; dim 1; }", "reserved word 'ring'", 1, 6),
    ("class n in P = h;", "reserved word 'n'", 1, 7),
    ("betti(n = 2, d = 1);", "betti takes (n)", 1, 19),
    ("x = 1;", "expected a statement", 1, 1),
    ("integrate(P; h @ h);", "unexpected character '@'", 1, 16),
    ("assert 1 == 1", "expected ';'", 1, 14),
])
def test_syntax_diagnostics(src, msg, line, col):
    with pytest.raises(DslSyntaxError) as info:
        parse(src)
    d = info.value.diagnostic
    assert msg in d.message
    assert (d.line, d.column) == (line, col)
    assert d.severity == "error" and d.snippet == src.splitlines()[line - 1]
    assert "^" in str(d)


@pytest.mark.parametrize("src,msg", [
    ("integrate(Q; 1);", "undeclared ring 'Q'"),
    ("ring P { gen h:1; rel h^2 = 0; dim 1; }\nintegrate(P; k);", "undeclared name 'k'"),
    ("ring P { gen h:1; rel h^2 = 0; dim 1; }\nintegrate(P; 1);", "cannot integrate"),
    ("ring P { gen h:1; rel h^2 = 0; dim 1; }\nring P { gen h:1; rel h^2 = 0; dim 1; }",
     "already bound"),
    ("ring P { gen h:1; rel 2*h^2 = 0; dim 1; }", "monic monomial"),
    ("ring P { gen h:1; rel h^2 = 0; dim 1; }\nintegrate(P; h/h);", "division"),
    ("ring P { gen h:1; rel h^2 = 0; dim 3; }", "fundamental class"),
    ("det(n = 2);", "n >= 3"),
    ("assert h == 1;", "needs a ring context"),
])
def test_eval_diagnostics(src, msg):
    with pytest.raises(DslEvalError) as info:
        run_source(src)
    d = info.value.diagnostic
    assert msg in d.message
    assert d.line >= 1 and d.column >= 1


def test_class_from_base_lifts():
    src = ("ring G { gen g:1; rel g^2 = 0; dim 1; }\n"
           "ring X { gen h:1; rel h^3 = 0; dim 2; }\n"
           "space GX = product(G, X);\n"
           "class y in GX = g*h + h^2;\n"
           "class hx in X = h;\n"
           "assert integrate(GX; y*hx) == 1;\n"
           "assert integrate(GX; y*g) == 1;\n")
    assert all(r.ok for r in run_source(src))
    with pytest.raises(DslEvalError):
        run_source(src + "integrate(X; y*h);\n")
