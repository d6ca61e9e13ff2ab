"""Projective simulation under partial observability: agents, ensembles and asymptotics."""

from .agent import Agent, AgentConfig, ClipId, ClipKind, new_agent
from .analytics import (AsymptoticModel, EffectiveRewardCurve, TransparencyReport, asymptotic_surface,
                        default_lambda_table, estimate_lambda_eff, model_for, mu_closed_form,
                        pq_closed_form, r_po_closed_form, transparency)
from .config import PRESETS, ExperimentConfig, load_config, preset
from .ensemble import EnsembleSpec, fo_spec, po_spec, simulate
from .experiment import EfficiencyCurve, action_rate_estimator, run_experiment
from .games import (AgentStrategy, GammaSplit, GameMatrix2x2, StrategyProfile, analyze_game,
                    build_game, classify_coalition, rmax_agent)
from .invasion import InvasionRules, RoundRecord, attacker_draw, reward_for, run_fo
from .observability import (BeliefChannel, ObservabilityConfig, TwoAgentSystem, belief_channel_of,
                            efficiency_fo, efficiency_mixed, efficiency_po_absolute, run_po, step_po)
from .oracle import oracle_exact
from .rng import RngStream

__version__ = "0.1.0"
