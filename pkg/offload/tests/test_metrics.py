from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from offload.exceptions import UnreachableLinkError
from offload.services import metrics, scenario
from offload.services.metrics import QueueKind


def hap(**overrides):
    return scenario.load_config(overrides={'edge_class': 'HAP', **overrides})


def leo(**overrides):
    return scenario.load_config(overrides={'edge_class': 'LEO', **overrides})


class DelayTests(SimpleTestCase):
    def test_local_delay(self):
        self.assertAlmostEqual(metrics.local_delay(hap(offload_factor=0, frame_rate=1)), 0.0900, delta=1e-4)
        self.assertAlmostEqual(metrics.local_delay(hap(offload_factor=0, frame_rate=10)), 0.4661, delta=1e-4)
        self.assertIsNone(metrics.local_delay(hap(offload_factor=0, frame_rate=12)))

    def test_hap_edge_delay_without_extra_loss(self):
        cfg = hap(offload_factor=1, num_uavs=15, frame_rate=1, uav_antenna_elements=8, uav_gpu_efficiency=50)
        self.assertAlmostEqual(metrics.edge_delay(cfg), 0.2626, delta=0.3 * 0.2626)

    def test_idle_edge_queue_still_reports_delay(self):
        cfg = hap(offload_factor=0)
        delay = metrics.edge_delay(cfg)
        self.assertIsNotNone(delay)
        self.assertGreater(delay, 90 / 20000)

    def test_edge_delay_grows_with_swarm(self):
        delays = [metrics.edge_delay(hap(offload_factor=1, frame_rate=1, num_uavs=n)) for n in range(5, 35, 5)]
        self.assertTrue(all(a < b for a, b in zip(delays, delays[1:])))

    def test_leo_delay_falls_with_elevation(self):
        delays = [metrics.edge_delay(leo(offload_factor=1, elevation_angle=a)) for a in (10, 30, 50, 70, 90)]
        self.assertTrue(all(a > b for a, b in zip(delays, delays[1:])))

    def test_leo_delay_falls_with_array_size(self):
        delays = [
            metrics.edge_delay(leo(offload_factor=1, elevation_angle=70, uav_antenna_elements=n))
            for n in (4, 8, 16, 32, 64, 128)
        ]
        self.assertTrue(all(a > b for a, b in zip(delays, delays[1:])))

    def test_unstable_edge_queue(self):
        self.assertIsNone(metrics.edge_delay(hap(offload_factor=1, num_uavs=30, frame_rate=20)))


class AverageDelayTests(SimpleTestCase):
    def test_endpoints_are_exact(self):
        local_only = hap(offload_factor=0, frame_rate=5)
        self.assertEqual(metrics.average_delay(local_only), metrics.local_delay(local_only))
        edge_only = hap(offload_factor=1, frame_rate=5)
        self.assertEqual(metrics.average_delay(edge_only), metrics.edge_delay(edge_only))

    def test_half_offload_is_the_mean(self):
        cfg = hap(offload_factor=0.5, frame_rate=5)
        expected = (metrics.local_delay(cfg) + metrics.edge_delay(cfg)) / 2
        self.assertAlmostEqual(metrics.average_delay(cfg), expected)

    def test_unused_term_is_ignored(self):
        self.assertEqual(metrics.combine_delays(0, 0.1, None), 0.1)
        self.assertEqual(metrics.combine_delays(1, None, 0.2), 0.2)
        self.assertIsNone(metrics.combine_delays(0.5, None, 0.2))
        self.assertIsNone(metrics.combine_delays(0.5, 0.1, None))


class AutonomyTests(SimpleTestCase):
    def test_local_processing_autonomy(self):
        expected = {30: 0.8762, 50: 0.9218, 70: 0.9429, 90: 0.9550}
        for nu, value in expected.items():
            cfg = hap(offload_factor=0, frame_rate=10, uav_gpu_efficiency=nu)
            self.assertAlmostEqual(metrics.uav_autonomy(cfg), value, delta=5e-4, msg=f"nu={nu}")

    def test_local_autonomy_ignores_the_channel(self):
        base = metrics.uav_autonomy(hap(offload_factor=0))
        for overrides in ({'extra_loss_ul': 10}, {'uav_antenna_elements': 128}, {'total_bandwidth': 50}):
            self.assertEqual(metrics.uav_autonomy(hap(offload_factor=0, **overrides)), base)

    def test_local_autonomy_survives_a_dead_link(self):
        base = metrics.uav_autonomy(hap(offload_factor=0))
        lossy = hap(offload_factor=0, extra_loss_ul=200, extra_loss_dl=200)
        self.assertEqual(metrics.uav_autonomy(lossy), base)

    def test_no_frames_is_full_autonomy(self):
        self.assertEqual(metrics.uav_autonomy(replace(hap(), frame_rate=0.0)), 1.0)

    def test_array_size_has_an_interior_optimum(self):
        def autonomy(n):
            return metrics.uav_autonomy(
                hap(offload_factor=1, uav_antenna_elements=n, uav_gpu_efficiency=50, num_uavs=20, frame_rate=10)
            )
        self.assertGreater(autonomy(16), autonomy(4))
        self.assertGreater(autonomy(16), autonomy(128))


class StabilityMapTests(SimpleTestCase):
    def test_edge_grids(self):
        n_values, r_values = [5, 10, 20, 30], [5, 10, 15, 20]
        half = metrics.stability_map(hap(offload_factor=0.5), n_values, r_values, QueueKind.EDGE)
        full = metrics.stability_map(hap(offload_factor=1), n_values, r_values, QueueKind.EDGE)
        self.assertAlmostEqual(half[0, 0], 0.056, delta=5e-4)
        self.assertAlmostEqual(half[3, 3], 1.35)
        self.assertAlmostEqual(full[2, 3], 1.8)
        self.assertAlmostEqual(full[3, 3], 2.7)
        expected = np.outer(n_values, r_values) * 1.0 * 90 / 20000
        np.testing.assert_allclose(full, expected)

    def test_no_offload_leaves_edge_empty(self):
        grid = metrics.stability_map(hap(offload_factor=0), [5, 30], [5, 20], QueueKind.EDGE)
        np.testing.assert_array_equal(grid, np.zeros((2, 2)))

    def test_local_grid_ignores_swarm_size(self):
        grid = metrics.stability_map(hap(offload_factor=0), [5, 30], [5, 10], QueueKind.LOCAL)
        np.testing.assert_allclose(grid, [[0.45, 0.9], [0.45, 0.9]])

    def test_empty_grid(self):
        with self.assertRaises(ValueError):
            metrics.stability_map(hap(), [], [5], QueueKind.LOCAL)

    def test_array_grids(self):
        grid = metrics.stability_map(hap(offload_factor=0), np.array([5, 30]), np.arange(5, 15, 5), QueueKind.LOCAL)
        np.testing.assert_allclose(grid, [[0.45, 0.9], [0.45, 0.9]])
        with self.assertRaises(ValueError):
            metrics.stability_map(hap(), np.array([], dtype=int), np.array([5]), QueueKind.LOCAL)


class EvaluateTests(SimpleTestCase):
    def test_row_is_consistent(self):
        cfg = hap(offload_factor=0.5)
        row = metrics.evaluate(cfg)
        self.assertEqual(row.edge_class, 'HAP')
        self.assertEqual(row.avg_delay, metrics.average_delay(cfg))
        self.assertEqual(row.autonomy, metrics.uav_autonomy(cfg))
        self.assertAlmostEqual(row.bandwidth, 20e6)
        self.assertGreater(row.uplink.capacity, 0)
        self.assertGreater(row.uav_endurance, 0)
        self.assertLess(row.uav_endurance, cfg.uav.battery_capacity / 212)
        self.assertEqual(row.uav_capacity.harvested, 0)

    def test_leo_server_spends_less_than_hap(self):
        for n in (5, 10, 15, 20):
            leo_row = metrics.evaluate(leo(offload_factor=1, num_uavs=n, uav_antenna_elements=8))
            hap_row = metrics.evaluate(hap(offload_factor=1, num_uavs=n, uav_antenna_elements=8))
            self.assertLess(leo_row.edge_energy.total, hap_row.edge_energy.total, msg=f"n={n}")

    def test_edge_energy_linear_in_flight_time(self):
        short = metrics.evaluate(hap(offload_factor=1, flight_time=10))
        long = metrics.evaluate(hap(offload_factor=1, flight_time=60))
        self.assertAlmostEqual(long.edge_energy.total, 6 * short.edge_energy.total, delta=1e-6)

    def test_utilisation(self):
        row = metrics.evaluate(hap(offload_factor=1))
        self.assertAlmostEqual(row.edge_utilisation, row.edge_energy.total / row.edge_capacity.capacity)

    def test_local_only_row_with_a_dead_link(self):
        cfg = hap(offload_factor=0, extra_loss_ul=200, extra_loss_dl=200)
        row = metrics.evaluate(cfg)
        self.assertAlmostEqual(row.avg_delay, 0.4661, delta=1e-4)
        self.assertEqual(row.avg_delay, row.local_delay)
        self.assertEqual(row.uav_energy.offloading, 0)
        self.assertEqual(row.edge_energy.total, 0)
        self.assertGreater(row.uplink.capacity, 0)

    def test_link_without_any_rate(self):
        # the SNR underflows to zero
        local_only = hap(offload_factor=0, extra_loss_ul=4000)
        row = metrics.evaluate(local_only)
        self.assertEqual(row.uplink.capacity, 0)
        self.assertIsNone(row.edge_delay)
        self.assertEqual(row.avg_delay, row.local_delay)
        with self.assertRaises(UnreachableLinkError):
            metrics.evaluate(hap(offload_factor=0.5, extra_loss_ul=4000))
