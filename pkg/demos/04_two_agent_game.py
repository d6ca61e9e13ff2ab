"""Two agents that each block and teach: coalitions and the 2x2 game."""

from popsim.games import (AgentStrategy, GammaSplit, StrategyProfile, analyze_game, build_game,
                          classify_coalition, format_game_report)

for g1i, g1j in [(0.0, 0.0), (1.0, 1.0), (0.3, 0.8)]:
    prof = StrategyProfile(AgentStrategy(GammaSplit.of(1.0, g1i), 0.0),
                           AgentStrategy(GammaSplit.of(1.0, g1j), 0.0))
    rep = classify_coalition(prof)
    print(f"blocking shares ({g1i}, {g1j}): PO {rep.r_col_po:.3f} vs FO {rep.r_col_fo:.3f} -> {rep.kind}")

game = build_game(0.0, 0.0, 1.0, 0.9)
print(format_game_report(game, analyze_game(game)))

fixed = build_game(0.5, 0.0, 0.5, 0.9)
print("same observability for both strategies:", analyze_game(fixed).strictly_dominant)
