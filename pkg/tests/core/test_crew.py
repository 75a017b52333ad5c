"""Тесты плана ремонтных бригад."""

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridtriage.core.crew import build_crew_plan, non_ordinary_buses, restoration_set, teams_for_line
from gridtriage.core.damage import assess_lines
from gridtriage.core.valuation import ranking_of, value_lines
from gridtriage.errors import UnknownBus
from gridtriage.types import StormScenario


def _ranking_and_damage(model, wind):
    damage = assess_lines(model.network.line_ids, model.inventories, model.fragility, StormScenario(v_real=wind))
    return ranking_of(value_lines(model.network, damage)), damage


@pytest.fixture(scope="module")
def reference_plan():
    path = Path(__file__).parent.parent / "test_data" / "crew_plan_105kmh.json"
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.mark.parametrize("bt, teams", [(4.2723, 5), (2.51, 3), (3.0, 3), (0.0, 0), (0.0001, 1)])
def test_teams_for_line(bt, teams):
    assert teams_for_line(bt) == teams


def test_reference_crew_plan(ieee33, reference_plan):
    """Цели {4, 6, 24} при 105 км/ч: 8 линий и 29 бригад."""
    ranking, damage = _ranking_and_damage(ieee33, reference_plan["wind_kmh"])
    plan = build_crew_plan(ieee33.network, ranking, damage, reference_plan["targets"])

    expected = {int(line_id): teams for line_id, teams in reference_plan["teams"].items()}
    assert {entry.line_id for entry in plan.entries} == set(expected)
    assert {entry.line_id: entry.teams for entry in plan.entries} == expected
    assert plan.total_teams == reference_plan["total_teams"] == 29
    assert plan.target_buses == [4, 6, 24]


def test_plan_follows_engine_ranking(ieee33, reference_plan):
    """Порядок плана задаётся рейтингом; эталонный порядок начинается с линии 3."""
    ranking, damage = _ranking_and_damage(ieee33, 105)
    plan = build_crew_plan(ieee33.network, ranking, damage, [4, 6, 24])
    ranks = {entry.line_id: entry.rank for entry in ranking}
    assert [ranks[entry.line_id] for entry in plan.entries] == sorted(ranks[entry.line_id] for entry in plan.entries)
    assert plan.entries[0].line_id == 1
    assert reference_plan["reference_order"][0] == 3
    assert sorted(reference_plan["reference_order"]) == sorted(entry.line_id for entry in plan.entries)


def test_restoration_set_examples(ieee33):
    ranking, _ = _ranking_and_damage(ieee33, 105)
    net = ieee33.network
    assert sorted(restoration_set(net, ranking, [4, 6, 24])) == [1, 2, 3, 4, 5, 6, 23, 24]
    assert restoration_set(net, ranking, [1]) == [1]
    assert sorted(restoration_set(net, ranking, [6, 4])) == sorted(restoration_set(net, ranking, [6]))
    with pytest.raises(UnknownBus):
        restoration_set(net, ranking, [99])


def test_empty_and_undamaged_plans(ieee33):
    ranking, damage = _ranking_and_damage(ieee33, 105)
    empty = build_crew_plan(ieee33.network, ranking, damage, [])
    assert empty.entries == []
    assert empty.total_teams == 0

    undamaged = build_crew_plan(ieee33.network, ranking, {}, [1])
    assert [(entry.line_id, entry.teams) for entry in undamaged.entries] == [(1, 0)]


def test_non_ordinary_buses(ieee33):
    assert non_ordinary_buses(ieee33.network) == [4, 6, 24]


def test_saturated_plan_counts_all_poles(ieee33):
    ranking, damage = _ranking_and_damage(ieee33, 200)
    plan = build_crew_plan(ieee33.network, ranking, damage, [4, 6, 24])
    assert plan.total_teams == sum(ieee33.inventories[line_id].total for line_id in [1, 2, 3, 4, 5, 6, 23, 24])


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=33), max_size=6),
    st.integers(min_value=1, max_value=33),
    st.floats(min_value=0, max_value=200),
    st.floats(min_value=0, max_value=200),
)
def test_plan_properties(ieee33, targets, extra, first_wind, second_wind):
    """Множество замкнуто вверх по течению, монотонно по целям и по ветру."""
    net = ieee33.network
    ranking, damage = _ranking_and_damage(ieee33, first_wind)
    lines = restoration_set(net, ranking, targets)
    for line_id in lines:
        parent = net.parent_line(line_id)
        assert parent is None or parent in lines
    assert set(lines) <= set(restoration_set(net, ranking, targets + [extra]))

    low, high = sorted((first_wind, second_wind))
    low_plan = build_crew_plan(net, *_ranking_and_damage(ieee33, low), targets)
    high_plan = build_crew_plan(net, *_ranking_and_damage(ieee33, high), targets)
    assert low_plan.total_teams <= high_plan.total_teams
