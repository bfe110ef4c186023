"""
Tests for the parsing of the scenario files
"""
import glob
import os

import numpy as np
import pytest

from ckm.core import RegionClass, classify, perigee_apogee
from ckm.errors import ScenarioError
from ckm.scenario import ScenarioFile, parse_quantity, parse_vector
from ckm.solvers.optimal import OcpKind

from .utils import SCENARIO_DIR, scenario_path


def get_data(**kwargs):
    data = {
        "problem": "OIP",
        "initial_mass": "150 kg",
        "state": {"scalars": {"altitude": "110 km", "speed": "7879.5 m/s", "flight_path_angle": "5 deg"}},
    }
    data.update(kwargs)
    return data


@pytest.mark.parametrize("file_path", sorted(glob.glob(os.path.join(SCENARIO_DIR, "*.yaml"))))
def test_bundled_scenarios_parse(file_path):
    scenario = ScenarioFile.load(file_path)
    assert scenario.name == os.path.splitext(os.path.basename(file_path))[0]
    assert scenario.state is not None


def test_insertion_scenario(constants, x_i):
    scenario = ScenarioFile.load(scenario_path("oip_x_i"))
    np.testing.assert_allclose(scenario.state.r, x_i.r)
    np.testing.assert_allclose(scenario.state.v, x_i.v)
    np.testing.assert_allclose(scenario.constants.r_c, constants.r_c)
    np.testing.assert_allclose(scenario.engine.isp, 2000.0)
    np.testing.assert_allclose(scenario.thrust, 8.052)
    assert scenario.bisection == {"tau_lo": 6.0, "tau_hi": 10.0, "tol": 0.005}
    assert scenario.solver["knots_initial"] == 8
    assert classify(scenario.state, scenario.constants) is RegionClass.P_MINUS

    sc = scenario.get_ocp_scenario()
    assert sc.kind is OcpKind.OIP
    assert sc.anchor_mass == 150.0


def test_deorbit_scenario():
    scenario = ScenarioFile.load(scenario_path("dop_shuttle"))
    np.testing.assert_allclose(scenario.bisection["tau_lo"], 5000.0)
    np.testing.assert_allclose(scenario.bisection["reference_thrust"], 53378.6)

    sc = scenario.get_ocp_scenario()
    assert sc.kind is OcpKind.DOP
    np.testing.assert_allclose(sc.anchor_state.v, - scenario.state.v)


def test_coe_state():
    scenario = ScenarioFile.load(scenario_path("path_p_plus"))
    r_p, r_a = perigee_apogee(scenario.terminal_state)
    np.testing.assert_allclose([r_p, r_a], [7174e3 * 0.99, 7174e3 * 1.01], rtol=1e-10)


def test_units():
    np.testing.assert_allclose(parse_quantity("110 km", "length", "f"), 110000.0)
    np.testing.assert_allclose(parse_quantity("90 deg", "angle", "f"), np.pi / 2.0)
    np.testing.assert_allclose(parse_quantity("2 min", "time", "f"), 120.0)
    np.testing.assert_allclose(parse_quantity("3.986e5 km3/s2", "gravitational_parameter", "f"), 3.986e14)
    np.testing.assert_allclose(parse_vector("[6484, 0, -1] km", "length", "f"), [6.484e6, 0.0, -1.0e3])


@pytest.mark.parametrize(
    "value, message",
    [
        ("110", "formatted"),
        (110, "unit suffix"),
        ("110 miles", "is not one of"),
        ("110 m/s", "not a unit of length"),
        ("abc km", "not a number"),
    ],
)
def test_unit_errors_name_the_field(value, message):
    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(state={"scalars": {"altitude": value, "speed": "7879.5 m/s", "flight_path_angle": "5 deg"}}))
    assert error.value.field == "state.scalars.altitude"
    assert message in str(error.value)


def test_vector_errors():
    with pytest.raises(ScenarioError) as error:
        parse_vector("[1, 2] km", "length", "state.cartesian.r")
    assert error.value.field == "state.cartesian.r"
    with pytest.raises(ScenarioError):
        parse_vector("[1, a, 2] km", "length", "state.cartesian.r")


def test_unknown_keys_are_rejected():
    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(colour="red"))
    assert error.value.field == "colour"
    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(solver={"knots": 4}))
    assert error.value.field == "solver.knots"


def test_missing_keys():
    data = get_data()
    del data["state"]
    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(data)
    assert error.value.field == "state"

    scenario = ScenarioFile.from_dict(get_data(problem="propagate"))
    with pytest.raises(ScenarioError) as error:
        scenario.require("thrust")
    assert error.value.field == "thrust"


def test_exactly_one_state_form():
    state = {
        "scalars": {"altitude": "110 km", "speed": "7879.5 m/s", "flight_path_angle": "5 deg"},
        "cartesian": {"r": "[6484, 0, 0] km", "v": "[0, 7.8, 0] km/s"},
    }
    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(state=state))
    assert error.value.field == "state"

    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(state={"scalars": {"radius": "6484 km", "altitude": "110 km", "speed": "7879.5 m/s", "flight_path_angle": "5 deg"}}))
    assert error.value.field == "state.scalars"


def test_invalid_values():
    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(solver={"knots_initial": "many"}))
    assert error.value.field == "solver.knots_initial"

    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(problem="ascent"))
    assert error.value.field == "problem"

    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(initial_mass="-1 kg"))
    assert error.value.field == "initial_mass"

    # invalid elements are reported at the state
    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(state={"coe": {"a": "7000 km", "e": 1.5, "i": "0 deg", "omega": "0 deg", "Omega": "0 deg", "theta": "0 deg"}}))
    assert error.value.field == "state.coe"


def test_propagation_block():
    scenario = ScenarioFile.from_dict(get_data(problem="propagate", propagation={"duration": "10 min", "control": "tangential", "thrust": "2 N", "events": ["PerigeeMatch"]}))
    assert scenario.propagation["duration"] == 600.0
    assert scenario.propagation["thrust"] == 2.0
    assert scenario.propagation["events"] == ["PerigeeMatch"]

    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(propagation={"duration": "10 min", "periods": 1}))
    assert error.value.field == "propagation"
    with pytest.raises(ScenarioError) as error:
        ScenarioFile.from_dict(get_data(propagation={"events": ["Landing"]}))
    assert error.value.field == "propagation.events"


def test_invalid_yaml(tmp_path):
    file_path = tmp_path / "broken.yaml"
    file_path.write_text("problem: [OIP\n")
    with pytest.raises(ScenarioError):
        ScenarioFile.load(str(file_path))
