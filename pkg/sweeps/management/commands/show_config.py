from django.core.management.base import BaseCommand

from offload.services import scenario
from sweeps.management.errors import command_errors, read_config_file


class Command(BaseCommand):
    help = 'Print the resolved scenario in file units, with its digest'

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON scenario file (file units)')
        parser.add_argument(
            '--set',
            action='append',
            default=[],
            dest='overrides',
            metavar='KEY=VALUE',
            help='Override a configuration key',
        )

    def handle(self, *args, **options):
        with command_errors():
            cfg = scenario.load_config(read_config_file(options['config']), options['overrides'])

        self.stdout.write(scenario.canonical_json(scenario.dump_config(cfg)))
        self.stdout.write(self.style.SUCCESS(f'sha256: {scenario.config_digest(cfg)}'))
