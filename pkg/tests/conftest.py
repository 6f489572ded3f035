import functools

import pytest

from codegs import groupsig as gs
from codegs.indexcode import i2b
from codegs.mceliece import me_encrypt_full
from codegs.rng import Rng
from codegs.stern import Witness


@functools.lru_cache(maxsize=None)
def group(name="toy-tiny", mode="cpa", seed=0, ell=None):
    """Cached (gpk, gmsk, usks, discarded second key) for a parameter set."""
    p = gs.PARAM_SETS[name]
    if ell is not None:
        p = p.with_ell(ell)
    return gs.keygen(p, mode, Rng(seed, b"test-group"), return_discarded=True)


def instance(name="toy-tiny", mode="cpa", j=None, rng=None, seed=0):
    """A fresh (statement, witness) pair: user j's key plus new ciphertexts of I2B(j)."""
    gpk, _, usks, _ = group(name, mode, seed)
    rng = rng or Rng(1)
    if j is None:
        j = rng.below(len(usks))
    plain = i2b(j, gpk.params.ell)
    cts, us, es = [], [], []
    for pk in gpk.pks:
        c, u, e = me_encrypt_full(pk, plain, rng)
        cts.append(c)
        us.append(u)
        es.append(e)
    return gpk.statement(cts), Witness(j, usks[j].s, us, es)


@pytest.fixture(params=["cpa", "cca"])
def mode(request):
    return request.param


# one PASS/FAIL line per acceptance criterion, shown after the run
ACCEPTANCE = []


def record(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} -- {detail}"
    ACCEPTANCE.append((number, line))
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
