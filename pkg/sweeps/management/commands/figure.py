from django.core.management.base import BaseCommand

from offload.services import scenario
from sweeps.management.errors import command_errors
from sweeps.services.figures import figure_command, figure_ids


class Command(BaseCommand):
    help = 'Regenerate the data grid behind a named figure'

    def add_arguments(self, parser):
        parser.add_argument('figure_id', help=f"One of: {', '.join(figure_ids())}")
        parser.add_argument('--out', required=True, help='Output CSV path')
        parser.add_argument(
            '--set',
            action='append',
            default=[],
            dest='overrides',
            metavar='KEY=VALUE',
            help="Override a configuration key on top of the figure's configuration",
        )
        parser.add_argument('--workers', type=int, help='Worker threads (SWEEP_WORKERS by default)')

    def handle(self, *args, **options):
        with command_errors():
            overrides = scenario.parse_overrides(options['overrides'])
            frame = figure_command(options['figure_id'], options['out'], overrides, workers=options['workers'])

        self.stdout.write(self.style.SUCCESS(f"Figure {options['figure_id']}: {len(frame)} rows -> {options['out']}"))
