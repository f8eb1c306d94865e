from dataclasses import replace

from django.test import SimpleTestCase

from offload.constants import AntennaKind
from offload.services import energy, scenario
from offload.services.energy import EnergyBreakdown
from offload.services.scenario import AntennaPowerModel


def upa(elements):
    return AntennaPowerModel(AntennaKind.UPA, elements, 168.0, 178.5, 69.0, 266.8)


CAR = AntennaPowerModel(AntennaKind.CAR, 1, 0.0, 316.0, 0.0, 305.8)


class HoverTests(SimpleTestCase):
    def test_reference_drone(self):
        self.assertAlmostEqual(energy.hover_power(3, 0.3, 1), 212.2, delta=0.5)

    def test_power_scales_inversely_with_radius(self):
        self.assertAlmostEqual(energy.hover_power(3, 1.2, 1), energy.hover_power(3, 0.3, 1) / 4)

    def test_edge_nodes_do_not_move(self):
        cfg = scenario.load_config()
        self.assertEqual(energy.movement_energy(cfg.edge, 3600, 212.2), 0.0)
        self.assertAlmostEqual(energy.movement_energy(cfg.uav, 3600, 212.2), 763_920, delta=1e-6)
        self.assertEqual(energy.movement_energy(cfg.uav, 0, 212.2), 0.0)


class TransceiverTests(SimpleTestCase):
    def test_tx_power(self):
        self.assertAlmostEqual(energy.tx_power(upa(8), 30), 2.5225)
        self.assertAlmostEqual(energy.tx_power(upa(64), 30), 11.9305)
        self.assertAlmostEqual(energy.tx_power(CAR, 30), 1.316)

    def test_amplifier_efficiency_divides_radiated_power(self):
        lossy = replace(upa(8), amplifier_efficiency=0.5)
        self.assertAlmostEqual(energy.tx_power(lossy, 30), 2.0 + 1.5225)

    def test_rx_power(self):
        self.assertAlmostEqual(energy.rx_power(upa(8)), 0.8188)
        self.assertAlmostEqual(energy.rx_power(upa(64)), 4.6828)
        self.assertAlmostEqual(energy.rx_power(CAR), 0.3058)

    def test_car_receives_cheaper_than_any_upa(self):
        for n in (1, 2, 4, 8, 64, 256):
            self.assertLess(energy.rx_power(CAR), energy.rx_power(upa(n)))

    def test_offload_energy(self):
        uav, _ = energy.offload_energy_per_frame(0.226, 0.0041, upa(8), upa(64), 30)
        self.assertAlmostEqual(uav, 0.573, delta=1e-3)
        self.assertEqual(energy.offload_energy_per_frame(0, 0, upa(8), CAR, 30), (0.0, 0.0))

    def test_symmetric_links_cost_the_same(self):
        uav, edge = energy.offload_energy_per_frame(0.1, 0.1, upa(16), upa(16), 30)
        self.assertAlmostEqual(uav, edge)

    def test_processing_energy(self):
        self.assertAlmostEqual(energy.processing_energy_per_frame(90, 50), 1.8)
        self.assertAlmostEqual(energy.processing_energy_per_frame(90, 200), 0.45)


class TotalEnergyTests(SimpleTestCase):
    def setUp(self):
        self.cfg = scenario.load_config(overrides={'offload_factor': 0, 'uav_gpu_efficiency': 50})

    def test_local_processing_only(self):
        breakdown = energy.uav_total_energy(self.cfg, 0.6, 1.8)
        self.assertAlmostEqual(breakdown.processing, 64_800, delta=1e-6)
        self.assertEqual(breakdown.offloading, 0)
        self.assertAlmostEqual(breakdown.movement, energy.uav_hover_power(self.cfg) * 3600)
        self.assertEqual(breakdown.total, breakdown.movement + breakdown.processing + breakdown.offloading)

    def test_full_offload_drops_processing(self):
        cfg = replace(self.cfg, offload_factor=1.0)
        self.assertEqual(energy.uav_total_energy(cfg, 0.6, 1.8).processing, 0)

    def test_no_frames_leaves_hovering(self):
        cfg = replace(self.cfg, frame_rate=0.0)
        breakdown = energy.uav_total_energy(cfg, 0.6, 1.8)
        self.assertEqual(breakdown.total, breakdown.movement)

    def test_uav_energy_is_affine_in_offload_factor(self):
        totals = [energy.uav_total_energy(replace(self.cfg, offload_factor=eta), 0.6, 1.8).total for eta in (0, 0.5, 1)]
        self.assertAlmostEqual(totals[1] - totals[0], totals[2] - totals[1], delta=1e-6)
        self.assertAlmostEqual(totals[2] - totals[0], (0.6 - 1.8) * 10 * 3600, delta=1e-6)

    def test_edge_energy_nothing_offloaded(self):
        self.assertEqual(energy.edge_total_energy(self.cfg, 0.4, 0.45).total, 0)

    def test_edge_energy_is_linear(self):
        cfg = replace(self.cfg, offload_factor=1.0)
        base = energy.edge_total_energy(cfg, 0.4, 0.45)
        self.assertEqual(base.movement, 0)
        self.assertAlmostEqual(base.total, 1.0 * 10 * 20 * (0.4 + 0.45) * 3600)
        for changed in (
            replace(cfg, flight_time=7200),
            replace(cfg, num_uavs=40),
            replace(cfg, frame_rate=20),
        ):
            self.assertAlmostEqual(energy.edge_total_energy(changed, 0.4, 0.45).total, 2 * base.total)


class CapacityTests(SimpleTestCase):
    def setUp(self):
        self.cfg = scenario.load_config()

    def test_uav_has_battery_only(self):
        cap = energy.energy_capacity(self.cfg.uav, 500, 3600, 600, 0.15)
        self.assertEqual(cap.battery, 468_000)
        self.assertEqual(cap.harvested, 0)
        self.assertEqual(cap.capacity, 468_000)

    def test_idle_edge_cannot_store_harvest(self):
        cap = energy.energy_capacity(self.cfg.edge, 0, 3600, 600, 0.15)
        self.assertEqual(cap.harvested, 0)
        self.assertEqual(cap.capacity, cap.battery)

    def test_busy_edge_uses_all_harvest(self):
        cap = energy.energy_capacity(self.cfg.edge, 18_000, 3600, 600, 0.15)
        self.assertAlmostEqual(cap.harvested, 9000 * 3600, delta=1e-3)
        self.assertAlmostEqual(cap.capacity, 8000 * 3600 + 9000 * 3600, delta=1e-3)

    def test_light_load_caps_harvest_at_consumption(self):
        cap = energy.energy_capacity(self.cfg.edge, 1000, 3600, 600, 0.15)
        self.assertAlmostEqual(cap.harvested, 1000 * 3600, delta=1e-3)

    def test_node_capacity_uses_average_draw(self):
        breakdown = EnergyBreakdown(movement=0, processing=1000 * 3600, offloading=0)
        cap = energy.node_energy_capacity(self.cfg, self.cfg.edge, breakdown)
        self.assertAlmostEqual(cap.harvested, 1000 * 3600, delta=1e-3)
