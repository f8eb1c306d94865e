import math

from rest_framework import serializers

from .constants import (
    ANTENNA_KINDS,
    EDGE_CLASSES,
    EDGE_DEFAULTS,
    AntennaKind,
    NodeClass,
    SCENARIO_DEFAULTS as D,
)


def _bounds(name):
    """Error messages that name the offending field."""
    return {
        'min_value': f'{name} must be ≥ {{min_value}}',
        'max_value': f'{name} must be ≤ {{max_value}}',
    }


class FiniteFloatField(serializers.FloatField):
    """Float that rejects NaN and the infinities."""
    default_error_messages = {
        'not_finite': '{name} must be a finite number',
    }

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not math.isfinite(value):
            self.fail('not_finite', name=self.field_name)
        return value


class PositiveFloatField(FiniteFloatField):
    """Float that must be strictly greater than zero."""
    default_error_messages = {
        'not_positive': '{name} must be > 0',
    }

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if value <= 0:
            self.fail('not_positive', name=self.field_name)
        return value


class ScenarioConfigSerializer(serializers.Serializer):
    """Flat scenario mapping, in file units (Mb, MHz, GHz, km, Wh, min, mW)."""

    edge_class = serializers.ChoiceField(choices=EDGE_CLASSES, default=D['edge_class'])

    # Swarm and workload
    num_uavs = serializers.IntegerField(min_value=1, default=D['num_uavs'], error_messages=_bounds('num_uavs'))
    frame_rate = PositiveFloatField(default=D['frame_rate'])
    offload_factor = FiniteFloatField(
        min_value=0.0, max_value=1.0, default=D['offload_factor'], error_messages=_bounds('offload_factor')
    )
    ul_payload = FiniteFloatField(min_value=0.0, default=D['ul_payload'], error_messages=_bounds('ul_payload'))
    dl_payload = FiniteFloatField(min_value=0.0, default=D['dl_payload'], error_messages=_bounds('dl_payload'))
    compute_load = PositiveFloatField(default=D['compute_load'])
    flight_time = FiniteFloatField(min_value=0.0, default=D['flight_time'], error_messages=_bounds('flight_time'))

    # Radio
    total_bandwidth = PositiveFloatField(default=D['total_bandwidth'])
    ul_carrier = PositiveFloatField(default=D['ul_carrier'])
    dl_carrier = PositiveFloatField(default=D['dl_carrier'])
    tx_power = FiniteFloatField(default=D['tx_power'])
    elevation_angle = FiniteFloatField(
        min_value=0.0, max_value=90.0, default=D['elevation_angle'], error_messages=_bounds('elevation_angle')
    )
    extra_loss_ul = FiniteFloatField(min_value=0.0, default=D['extra_loss_ul'], error_messages=_bounds('extra_loss_ul'))
    extra_loss_dl = FiniteFloatField(min_value=0.0, default=D['extra_loss_dl'], error_messages=_bounds('extra_loss_dl'))
    amplifier_efficiency = PositiveFloatField(default=D['amplifier_efficiency'])

    # Hovering and harvesting
    uav_mass = PositiveFloatField(default=D['uav_mass'])
    propeller_radius = PositiveFloatField(default=D['propeller_radius'])
    air_density = PositiveFloatField(default=D['air_density'])
    solar_irradiance = FiniteFloatField(
        min_value=0.0, default=D['solar_irradiance'], error_messages=_bounds('solar_irradiance')
    )
    photovoltaic_efficiency = FiniteFloatField(
        min_value=0.0, max_value=1.0, default=D['photovoltaic_efficiency'],
        error_messages=_bounds('photovoltaic_efficiency'),
    )

    # UAV node
    uav_antenna_elements = serializers.IntegerField(
        min_value=1, default=D['uav_antenna_elements'], error_messages=_bounds('uav_antenna_elements')
    )
    uav_gpu_efficiency = PositiveFloatField(default=D['uav_gpu_efficiency'])
    uav_compute_capacity = PositiveFloatField(default=D['uav_compute_capacity'])
    uav_battery_capacity = FiniteFloatField(
        min_value=0.0, default=D['uav_battery_capacity'], error_messages=_bounds('uav_battery_capacity')
    )
    uav_altitude = FiniteFloatField(min_value=0.0, default=D['uav_altitude'], error_messages=_bounds('uav_altitude'))

    # Edge node; defaults depend on edge_class and are filled in validate()
    edge_antenna_kind = serializers.ChoiceField(choices=ANTENNA_KINDS, required=False)
    edge_antenna_elements = serializers.IntegerField(
        min_value=1, required=False, error_messages=_bounds('edge_antenna_elements')
    )
    edge_gpu_efficiency = PositiveFloatField(required=False)
    edge_compute_capacity = PositiveFloatField(required=False)
    edge_battery_capacity = FiniteFloatField(
        min_value=0.0, required=False, error_messages=_bounds('edge_battery_capacity')
    )
    edge_altitude = PositiveFloatField(required=False)
    edge_solar_panel_area = PositiveFloatField(required=False)
    edge_eirp = FiniteFloatField(required=False)
    edge_gain_to_temp = FiniteFloatField(required=False)

    # Transceiver circuitry (mW)
    upa_tx_slope = FiniteFloatField(min_value=0.0, default=D['upa_tx_slope'], error_messages=_bounds('upa_tx_slope'))
    upa_tx_intercept = FiniteFloatField(
        min_value=0.0, default=D['upa_tx_intercept'], error_messages=_bounds('upa_tx_intercept')
    )
    upa_rx_slope = FiniteFloatField(min_value=0.0, default=D['upa_rx_slope'], error_messages=_bounds('upa_rx_slope'))
    upa_rx_intercept = FiniteFloatField(
        min_value=0.0, default=D['upa_rx_intercept'], error_messages=_bounds('upa_rx_intercept')
    )
    car_tx_intercept = FiniteFloatField(
        min_value=0.0, default=D['car_tx_intercept'], error_messages=_bounds('car_tx_intercept')
    )
    car_rx_intercept = FiniteFloatField(
        min_value=0.0, default=D['car_rx_intercept'], error_messages=_bounds('car_rx_intercept')
    )

    def validate(self, attrs):
        unknown = sorted(set(self.initial_data) - set(self.fields))
        if unknown:
            raise serializers.ValidationError(f"unknown configuration keys: {', '.join(unknown)}")

        edge_defaults = EDGE_DEFAULTS[attrs['edge_class']]
        if attrs.get('edge_antenna_kind') == AntennaKind.CAR and 'edge_antenna_elements' not in attrs:
            attrs['edge_antenna_elements'] = 1
        for key, value in edge_defaults.items():
            attrs.setdefault(key, value)

        if attrs['edge_antenna_kind'] == AntennaKind.CAR and attrs['edge_antenna_elements'] != 1:
            raise serializers.ValidationError({'edge_antenna_elements': 'CAR antenna has a single element'})
        if attrs['edge_class'] == NodeClass.HAP and attrs['edge_altitude'] <= attrs['uav_altitude']:
            raise serializers.ValidationError({'edge_altitude': 'HAP altitude must exceed the UAV altitude'})
        return attrs
