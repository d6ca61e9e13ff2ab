import numpy as np
import pytest
from scipy import stats

from popsim.agent import AgentConfig, new_agent
from popsim.invasion import InvasionRules, attacker_draw, reward_for, run_fo
from popsim.rng import RngStream


def test_attacker_is_uniform_n2():
    rng = RngStream(1)
    draws = np.array([attacker_draw(InvasionRules(2), rng) for _ in range(10**6)])
    assert abs(draws.mean() - 0.5) <= 0.002


def test_attacker_chi_square_n4():
    rng = RngStream(2)
    draws = [attacker_draw(InvasionRules(4), rng) for _ in range(100_000)]
    counts = np.bincount(draws, minlength=4)
    assert stats.chisquare(counts).pvalue > 0.001


def test_fo_run_symbols_chi_square():
    symbols = []
    for k in range(100):
        recs = run_fo(new_agent(2, 2, AgentConfig(0.1)), InvasionRules(2), 1000, RngStream(5, k))
        symbols.extend(r.world_symbol for r in recs)
    assert stats.chisquare(np.bincount(symbols, minlength=2)).pvalue > 0.001


def test_reward_examples():
    rules = InvasionRules(2)        # <= -> -, => -> +
    assert reward_for(rules, 1, 0, 0) == 1.0
    assert reward_for(rules, 1, 0, 1) == 0.0
    switched = InvasionRules(2, switch_time=10)
    assert reward_for(switched, 9, 0, 1) == 0.0
    assert reward_for(switched, 10, 0, 1) == 1.0


@pytest.mark.parametrize("n", [2, 3])
def test_reward_brute_force(n):
    rules = InvasionRules(n, switch_time=4)
    for t in range(1, 8):
        amap = rules.correct_action if t < 4 else rules.switched_map
        for s in range(n):
            for a in range(n):
                assert (reward_for(rules, t, s, a, 2.5) > 0) == (a == amap[s])


def test_rules_must_be_bijection():
    with pytest.raises(ValueError):
        InvasionRules(2, correct_action=(0, 0))
    with pytest.raises(ValueError):
        InvasionRules(1)


def test_zero_steps_leaves_agent_untouched():
    agent = new_agent(2, 2, AgentConfig(0.3))
    assert run_fo(agent, InvasionRules(2), 0, RngStream(0)) == []
    assert np.all(agent.h == 1.0)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        run_fo(new_agent(3, 2), InvasionRules(2), 5, RngStream(0))


def test_no_forgetting_learns_perfectly():
    agent = new_agent(2, 2, AgentConfig(0.0))
    run_fo(agent, InvasionRules(2), 3000, RngStream(9))
    for s in range(2):
        assert agent.transition_probs(s)[s] > 0.99


def test_records_obey_reward_invariant():
    recs = run_fo(new_agent(2, 2, AgentConfig(0.2)), InvasionRules(2, switch_time=50), 100, RngStream(4))
    assert [r.t for r in recs] == list(range(1, 101))
    rules = InvasionRules(2, switch_time=50)
    for r in recs:
        assert r.defender_reward in (0.0, 1.0)
        assert (r.defender_reward == 1.0) == (r.defender_action == rules.active_map(r.t)[r.world_symbol])
        assert r.blocked == (r.defender_reward == 1.0)
