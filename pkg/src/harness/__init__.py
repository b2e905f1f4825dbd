"""실험 하네스 모듈"""

from .campaign import CampaignConfig, RunReport, TrialRecord, run_campaign, run_instance, run_trial
from .config import Settings
from .kbv import KBVEntry, KBVTable
from .oracle import brute_force_optimum
from .stats import SignTestResult, critical_value, sign_test_wins
from .validate import Verdict, validate_solution

__all__ = [
    "CampaignConfig",
    "RunReport",
    "TrialRecord",
    "run_campaign",
    "run_instance",
    "run_trial",
    "Settings",
    "KBVEntry",
    "KBVTable",
    "brute_force_optimum",
    "SignTestResult",
    "critical_value",
    "sign_test_wins",
    "Verdict",
    "validate_solution",
]
