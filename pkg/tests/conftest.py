import sympy as sp

from semiconj.ratfun import QI, Poly, RatFun

zs = sp.Symbol("z")


def qi_to_sympy(c: QI):
    return sp.Rational(int(c.re.numerator), int(c.re.denominator)) + sp.I * sp.Rational(
        int(c.im.numerator), int(c.im.denominator))


def poly_to_sympy(p: Poly, var=zs):
    return sp.expand(sum(qi_to_sympy(c) * var**k for k, c in enumerate(p.coeffs)))


def ratfun_to_sympy(f: RatFun, var=zs):
    return poly_to_sympy(f.num, var) / poly_to_sympy(f.den, var)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, title, dt = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({dt:.1f}s)")
