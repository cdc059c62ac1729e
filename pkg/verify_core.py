"""
Verification Script
Quick acceptance checks: worst-case family, coefficient anchors, radii,
the log₂(4/3) limit, and small oracle cross-checks on sampled expressions.
"""

import sys
import time

from colorama import Fore, Style, init

from analysis.combinatorics import (LOG2_FOUR_THIRDS, asymptotics, coefficients,
                                    enumerate_all, radii)
from analysis.sampler import run_stats, sample_many
from core.automaton import build_apd, nfa_member, right_language_check
from core.derive import check_support, closure, p_upper, pi
from core.lang_oracle import bounded_language, words_up_to
from core.syntax import Alphabet, worst_case_family

init()

results = []


def check(name, func):
    started = time.time()
    try:
        passed, detail = func()
    except Exception as e:
        passed, detail = False, f"{type(e).__name__}: {e}"
    elapsed = time.time() - started
    color = Fore.GREEN if passed else Fore.RED
    mark = "✅ PASS" if passed else "❌ FAIL"
    print(f"{color}{mark}{Style.RESET_ALL} {name} ({elapsed:.1f}s) {detail}")
    results.append(passed)


def worst_case():
    for n in range(1, 11):
        e = worst_case_family(n)
        states = build_apd(e).state_count
        if states != 2 ** n or len(pi(e)) != 2 ** n - 1:
            return False, f"n={n}: {states} states"
    return True, "2^n states for n <= 10"


def coefficient_anchors():
    if coefficients(2, 3).r != (0, 3, 3, 30):
        return False, "r for k=2"
    t1 = coefficients(1, 3)
    if (t1.l[3], t1.p[3]) != (13, 14):
        return False, f"l3={t1.l[3]} p3={t1.p[3]}"
    for k in (1, 2):
        table = coefficients(k, 7)
        for n in range(1, 8):
            exprs = list(enumerate_all(k, n))
            if (len(exprs), sum(e.width for e in exprs), sum(p_upper(e) for e in exprs)) \
                    != (table.r[n], table.l[n], table.p[n]):
                return False, f"k={k} n={n}"
    return True, "recurrences match enumeration for k <= 2, n <= 7"


def radius_anchor():
    rho, _ = radii(2)
    return abs(rho - 1 / 7) < 1e-12, f"ρ₂ = {rho!r}"


def limit():
    ratios = [asymptotics(k, 1e8).ratio for k in (1e2, 1e4, 1e6)]
    monotone = ratios[0] > ratios[1] > ratios[2] > LOG2_FOUR_THIRDS
    close = abs(ratios[-1] - LOG2_FOUR_THIRDS) < 0.01
    return monotone and close, "ratios " + ", ".join(f"{r:.5f}" for r in ratios)


def oracles():
    for k in (1, 2, 3):
        for e in sample_many(k, 10, 40, seed=f"verify-{k}"):
            derivs = closure(e)
            if derivs.proper != pi(e) or len(pi(e)) > 2 ** e.width - 1:
                return False, f"π mismatch on {e}"
            nfa = build_apd(e)
            lang = bounded_language(e, 5)
            for w in words_up_to(nfa.alphabet, 5):
                if nfa_member(nfa, w) != (w in lang.words):
                    return False, f"membership of {''.join(w)} in {e}"
            if not all(right_language_check(nfa, s, 4) for s in range(nfa.state_count)):
                return False, f"right language in {e}"
            if not check_support(e, 4):
                return False, f"support of {e}"
    return True, "π, ∂⁺, membership, right languages, support"


def experiment():
    first = run_stats(2, 30, samples=100, seed=7)
    again = run_stats(2, 30, samples=100, seed=7)
    ok = (first == again and first.mean_states <= first.bound_worst
          and first.mean_pi <= first.bound_worst - 1)
    return ok, f"mean_pi={first.mean_pi:.2f} bound_worst={first.bound_worst:.2f}"


print(Fore.CYAN + "Running ShufflePD Core Verification..." + Style.RESET_ALL)
check("worst-case family", worst_case)
check("coefficient anchors", coefficient_anchors)
check("radius anchor", radius_anchor)
check("log₂(4/3) limit", limit)
check("oracle cross-checks", oracles)
check("sampling experiment", experiment)
print("-" * 40)

if all(results):
    print(Fore.GREEN + "All checks passed" + Style.RESET_ALL)
    sys.exit(0)
print(Fore.RED + f"{results.count(False)} check(s) failed" + Style.RESET_ALL)
sys.exit(1)
