from django.core.management.base import BaseCommand

from offload.services import scenario
from sweeps.management.errors import command_errors, read_config_file
from sweeps.services.sweep import build_spec, parse_axis, run_sweep


class Command(BaseCommand):
    help = 'Evaluate the scenario over the Cartesian product of the given axes and write a CSV'

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON scenario file (file units); defaults apply when omitted')
        parser.add_argument(
            '--axis',
            action='append',
            default=[],
            metavar='FIELD=V1,V2,...',
            help='Swept configuration key and its values; repeat for more axes',
        )
        parser.add_argument(
            '--set',
            action='append',
            default=[],
            dest='overrides',
            metavar='KEY=VALUE',
            help='Override a configuration key',
        )
        parser.add_argument('--out', required=True, help='Output CSV path')
        parser.add_argument('--workers', type=int, help='Worker threads (SWEEP_WORKERS by default)')

    def handle(self, *args, **options):
        with command_errors():
            values = scenario.parse_source(read_config_file(options['config']))
            values.update(scenario.parse_overrides(options['overrides']))
            axes = [parse_axis(item) for item in options['axis']]
            spec = build_spec(values, axes, options['out'])
            frame = run_sweep(spec, workers=options['workers'])

        unstable = int((frame['avg_delay_s'] == 'unstable').sum())
        self.stdout.write(
            self.style.SUCCESS(f'Wrote {len(frame)} rows to {spec.output} ({unstable} unstable)')
        )
