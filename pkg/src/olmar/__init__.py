"""On-line portfolio selection with moving average reversion."""

__version__ = "0.1.0"

from .algorithm import (
    BAHOlmar,
    ExpertEnsemble,
    OLMAR,
    OlmarParams,
    OlmarState,
    UpdateDiagnostics,
    bah_olmar_step,
    max_olmar,
    olmar_step,
    olmar_update,
)
from .backtest import (
    BacktestConfig,
    BacktestRecord,
    BacktestResult,
    StrategySpec,
    cost_factor,
    make_strategy,
    run_backtest,
    simulate,
)
from .baselines import bcrp, best_stock, market_wealth
from .market import (
    MarketDataError,
    MarketSequence,
    ToyMarketSpec,
    generate_toy,
    load_csv,
    prices_to_relatives,
    write_csv,
)
from .prediction import PredictionWindow, predict_mar
from .simplex import project_to_simplex, uniform
from .stats import StatsReport, compute_stats
