"""
Example architecture sweep. Every run gets its own config and output directory, the epoch
metrics go to one metrics DDBB and the runs with a large final tuning error are weeded out.

    python dgcca.py synth --n 200 --seed 7 --out runs/data
    PYTHONPATH=. python docs/sweep.py runs/data runs/sweep 40
"""
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from dgcca import main
from services.config_service import ConfigService

BASE_CONFIG = Path(__file__).resolve().parent.parent / 'configs' / 'synthetic.ini'

if __name__ == '__main__':
    data, out, n_runs = sys.argv[1], Path(sys.argv[2]), int(sys.argv[3])
    out.mkdir(parents=True, exist_ok=True)
    db_url = f'sqlite:///{out.resolve()}/metrics.db'

    base = ConfigService.load_config(BASE_CONFIG)
    rng = np.random.default_rng(base.seed)
    for run in range(n_runs):
        output_width = int(rng.integers(base.r, 11))
        hidden_width = int(rng.integers(output_width, 51))
        views = [
            replace(view, widths=[view.widths[0], hidden_width, output_width])
            for view in base.views
        ]
        config = replace(base, views=views, seed=base.seed + run)

        config_path = out / f'run_{run}.ini'
        config_path.write_text(ConfigService.dump_config(config))
        main(['train', '--config', str(config_path), '--data', data,
              '--out', str(out / f'run_{run}'), '--force', '--metrics-db', db_url])

    sys.exit(main(['screen', '--db', db_url]))
