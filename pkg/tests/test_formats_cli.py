import json

import pytest

from liebialg.symkernel import PolyExpr, Q, Symbol
from liebialg import schrodinger, families
from liebialg.formats import (ParseError, parse_algebra, serialize_algebra,
                              parse_rmatrix, parse_delta, parse_eqs, parse_map,
                              parse_subs, parse_ptable, parse_bindings_arg,
                              load_table)
from liebialg import cli

V = PolyExpr.var


def test_builtin_algebra_file(L):
    parsed = parse_algebra(load_table("schrodinger.alg"))
    assert parsed == L


def test_algebra_round_trip(L):
    text = serialize_algebra(L)
    assert serialize_algebra(parse_algebra(text)) == text


def test_all_builtin_algebras_round_trip():
    for name in ("schrodinger.alg", "oscillator.alg", "gl2.alg",
                 "galilei.alg", "twophoton.alg"):
        text = load_table(name)
        L = parse_algebra(text)
        assert parse_algebra(serialize_algebra(L)) == L


def test_empty_generator_list_rejected():
    with pytest.raises(ParseError):
        parse_algebra("generators:\n")


def test_missing_header_rejected():
    with pytest.raises(ParseError):
        parse_algebra("[D,P] = -P\n")


def test_unknown_generator_rejected():
    with pytest.raises(ParseError) as err:
        parse_algebra("generators: D P\n[D,Q] = -P\n")
    assert "Q" in str(err.value)


def test_duplicate_bracket_rejected():
    with pytest.raises(ParseError) as err:
        parse_algebra("generators: D P\n[D,P] = -P\n[P,D] = -P\n")
    assert "duplicate" in str(err.value)


def test_jacobi_failure_reports_triple():
    text = load_table("schrodinger.alg").replace("[D,P] = -P", "[D,P] = P")
    with pytest.raises(ParseError) as err:
        parse_algebra(text)
    assert "Jacobi" in str(err.value)
    assert "D" in str(err.value)


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_algebra("generators: D P\n[D,P] = -P +\n")
    assert err.value.line == 2


def test_rmatrix_parse_general(L):
    r = parse_rmatrix(load_table("general.rmat"), L)
    assert r == schrodinger.general_rmatrix(L)


def test_rmatrix_bare_and_signed_wedges(L):
    r = parse_rmatrix("P^K\n-D^M\n", L)
    want = PolyExpr.const(1)
    assert r.signed_coeff(("P", "K")) == want
    assert r.signed_coeff(("D", "M")) == -want


def test_rmatrix_invertible_header(L):
    r = parse_rmatrix(load_table("h_primitive_standard.rmat"), L)
    coeff = r.signed_coeff(("P", "H"))
    c2i = PolyExpr.var(Symbol("c2", invertible=True))
    assert coeff == -V("a2") * V("a3") * c2i ** -1


def test_rmatrix_rejects_unknown_generator(L):
    with pytest.raises(ParseError):
        parse_rmatrix("X^Y\n", L)


def test_delta_self_contained():
    alg, delta = parse_delta(load_table("oscillator_target.delta"))
    assert alg.names == ("N", "Ap", "Am", "M")
    assert delta.row("M").is_zero()
    assert delta.row("N").signed_coeff(("N", "Ap")) == V("ap")


def test_delta_with_explicit_algebra(L):
    _, delta = parse_delta(load_table("cocommutators_general.delta"), L)
    assert delta.row("M").is_zero()
    assert delta.row("D").signed_coeff(("D", "P")) == -V("a1")


def test_eqs_and_subs_parse():
    eqs = parse_eqs(load_table("constraints_c.eqs"))
    assert len(eqs) == 3
    assert eqs[0] == 4 * V("a2") * V("b2") + V("c3") ** 2
    subs = parse_subs(load_table("identification.subs"))
    assert subs["alpha2"] == -2 * V("a2")
    assert subs["alpha13"] == -V("c1") - V("c2")


def test_map_parse(L):
    m = parse_map(load_table("oscillator_embedding.map"), L)
    assert m["N"] == L.gen("D").scale(-1)
    assert m["M"] == L.gen("M")
    h6 = schrodinger.twophoton_algebra()
    m2 = parse_map(load_table("twophoton_iso.map"), h6)
    assert m2["D"] == h6.element({"N": -1, "M": Q(-1, 2)})


def test_ptable_round_trip():
    from liebialg.sklyanin import sklyanin_table
    T = sklyanin_table(families.load_rmatrix("general"))
    assert parse_ptable(load_table("poisson_general.ptable")) == T


def test_ptable_duplicate_rejected():
    with pytest.raises(ParseError):
        parse_ptable("{d,h} = 0\n{h,d} = 0\n")


def test_bindings_arg():
    out = parse_bindings_arg("c1=1/2,c2=0")
    assert out["c1"] == PolyExpr.const(Q(1, 2))
    assert out["c2"].is_zero()
    with pytest.raises(ParseError):
        parse_bindings_arg("c1")


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_schouten(capsys):
    code, out = run_cli(capsys, "schouten", "--r", "general.rmat")
    assert code == 0
    assert "coefficient on K^M^P" in out
    assert "-c2^2" in out


def test_cli_classify_nonstandard(capsys):
    code, out = run_cli(capsys, "classify", "--r", "d_primitive.rmat",
                        "--at", "c2=0")
    assert code == 0
    assert "non-standard" in out


def test_cli_classify_standard(capsys):
    code, out = run_cli(capsys, "classify", "--r", "d_primitive.rmat",
                        "--at", "c1=0,c2=1")
    assert code == 0
    assert "classification at point: standard" in out


def test_cli_delta(capsys):
    code, out = run_cli(capsys, "delta", "--r", "d_primitive.rmat")
    assert code == 0
    assert "delta(P) = (-c2 + c1)*P^M" in out


def test_cli_cocycle_solve(capsys):
    code, out = run_cli(capsys, "cocycle-solve")
    assert code == 0
    assert "kernel dimension: 15" in out


def test_cli_cojacobi_with_r(capsys):
    code, out = run_cli(capsys, "cojacobi", "--r", "general.rmat")
    assert code == 0
    assert "span dimension 19" in out


def test_cli_embed(capsys):
    code, out = run_cli(capsys, "embed", "--sub", "D,P,K,M",
                        "--target", "oscillator_target.delta",
                        "--map", "oscillator_embedding.map")
    assert code == 0
    assert "a1 -> -ap" in out
    assert "am*ap" in out


def test_cli_sklyanin_family(capsys):
    code, out = run_cli(capsys, "sklyanin", "--family", "d-primitive")
    assert code == 0
    assert "{h,m} = 2*c1*h" in out
    assert "[ok] poisson-jacobi" in out


def test_cli_hopf_check(capsys):
    code, out = run_cli(capsys, "hopf-check", "--case", "ucc", "--order", "2")
    assert code == 0
    assert "[ok] universal-r-qybe" in out


def test_cli_order_env(capsys, monkeypatch):
    monkeypatch.setenv(cli.DEFAULT_ORDER_ENV, "2")
    code, out = run_cli(capsys, "hopf-check", "--case", "ucc")
    assert code == 0
    assert "order 2" in out


def test_cli_tampered_algebra_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text(load_table("schrodinger.alg").replace(
        "[D,P] = -P", "[D,P] = P"))
    code, out = run_cli(capsys, "cojacobi", "--algebra", str(bad))
    assert code == 1
    assert "Jacobi" in out


def test_cli_unknown_command_exits_2(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_cli_missing_input_exits_1(capsys):
    code, out = run_cli(capsys, "schouten", "--r", "/nonexistent.rmat")
    assert code == 1


def test_cli_deterministic_output(capsys):
    _, out1 = run_cli(capsys, "delta", "--r", "general.rmat")
    _, out2 = run_cli(capsys, "delta", "--r", "general.rmat")
    assert out1 == out2


def test_cli_json_mirror(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _ = run_cli(capsys, "sklyanin", "--family", "d-primitive",
                      "--json", str(path))
    doc = json.loads(path.read_text())
    assert doc["ok"] is True and doc["exit_code"] == 0
    assert doc["command"] == "sklyanin"
    assert any(c["name"] == "poisson-jacobi" for c in doc["checks"])
    # deterministic mirror
    path2 = tmp_path / "report2.json"
    run_cli(capsys, "sklyanin", "--family", "d-primitive", "--json", str(path2))
    assert path.read_text() == path2.read_text()
