import numpy as np
import pandas as pd
from constance import config
from django.core.management.base import BaseCommand

from config import __version__
from offload.services import validation
from sweeps.management.errors import command_errors
from sweeps.services.sweep import write_csv

DES_LOADS = [round(0.1 * k, 1) for k in range(1, 10)]
SOLVER_LOADS = [float(x) for x in np.round(np.geomspace(0.01, 0.99, 25), 6)]


class Command(BaseCommand):
    help = 'Check the analytical D/M/1 solver against a simulation or against alternative root finders'

    def add_arguments(self, parser):
        parser.add_argument('--mode', choices=['des', 'solver'], default='des')
        parser.add_argument('--rho', action='append', type=float, dest='rhos', help='Load factor; repeatable')
        parser.add_argument('--arrivals', type=int, help='Simulated jobs per load factor (DES_ARRIVALS by default)')
        parser.add_argument('--seed', type=int, help='Generator seed (DES_SEED by default)')
        parser.add_argument('--out', help='CSV path; the report is printed when omitted')

    def handle(self, *args, **options):
        mode = options['mode']
        with command_errors():
            if mode == 'des':
                arrivals = options['arrivals'] or config.DES_ARRIVALS
                seed = config.DES_SEED if options['seed'] is None else options['seed']
                rows = validation.dm1_grid_report(
                    options['rhos'] or DES_LOADS,
                    arrivals,
                    seed,
                    warmup_fraction=config.DES_WARMUP_FRACTION,
                    batches=config.DES_BATCHES,
                )
                header = [f'arrivals: {arrivals}', f'seed: {seed}']
                failed = sum(not r['passed'] for r in rows)
            else:
                rows = validation.solver_grid_report(options['rhos'] or SOLVER_LOADS)
                header = []
                failed = sum(r['max_disagreement'] > 1e-9 for r in rows)

            frame = pd.DataFrame.from_records(rows)
            header = [f'ntn-offload-sim {__version__}', f'validation: {mode}', *header]
            if options['out']:
                write_csv(frame, options['out'], header)
            else:
                self.stdout.write(frame.to_csv(index=False, lineterminator='\n'))

        if failed:
            self.stdout.write(self.style.WARNING(f'{failed}/{len(rows)} load factors outside tolerance'))
        else:
            self.stdout.write(self.style.SUCCESS(f'All {len(rows)} load factors within tolerance'))
