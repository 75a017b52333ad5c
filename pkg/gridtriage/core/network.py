"""Модель радиальной распределительной сети.

Сеть хранится как ориентированное дерево networkx: узлы соответствуют шинам,
рёбра линиям (от источника к потребителю). Каждая шина, кроме корня, питается
ровно одной линией, поэтому линия однозначно задаётся питаемой шиной.

Если корнем указан служебный узел источника (идентификатор 0), он создаётся
автоматически и в отчётах не появляется: головная линия фидера идёт от него.

Функции и классы:
- build_network: Проверка и построение сети
- RadialNetwork: Неизменяемая сеть с запросами потомков и путей от источника

Примеры:
    >>> net = build_network(buses, lines, root=0)
    >>> sorted(net.descendants(23))
    [24, 25]
    >>> net.path_from_source(24)
    [1, 2, 3, 23, 24]
"""

import logging
from collections import Counter, defaultdict
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from gridtriage.config import SOURCE_NODE_ID
from gridtriage.errors import (
    CycleDetected,
    DisconnectedBus,
    DuplicateEnergizingLine,
    DuplicateId,
    LoadedRoot,
    UnknownBus,
    UnknownLine,
    UnknownRoot,
)
from gridtriage.types import Bus, Line

logger = logging.getLogger(__name__)


class RadialNetwork:
    """Радиальная сеть: дерево шин и линий с корнем в шине-источнике.

    Экземпляр неизменяем после построения и безопасен для чтения из любого
    числа потоков. Создаётся через build_network.

    Attributes:
        root (int): Идентификатор корневой шины (источника).
    """

    def __init__(
        self,
        buses: Mapping[int, Bus],
        lines: Mapping[int, Line],
        root: int,
        graph: "nx.DiGraph[int]",
    ) -> None:
        self.root = root
        self._buses: Dict[int, Bus] = dict(sorted(buses.items()))
        self._lines: Dict[int, Line] = dict(sorted(lines.items()))
        self._graph = nx.freeze(graph)
        self._energizing: Dict[int, int] = {line.to_bus: line.id for line in self._lines.values()}

        # Потомки вычисляются один раз: после построения сеть не меняется
        self._descendants: Dict[int, FrozenSet[int]] = {
            line.id: frozenset(self._energizing[bus] for bus in nx.descendants(self._graph, line.to_bus))
            for line in self._lines.values()
        }

    @property
    def buses(self) -> Tuple[Bus, ...]:
        """Шины сети по возрастанию идентификатора (без служебного источника)."""
        return tuple(self._buses.values())

    @property
    def lines(self) -> Tuple[Line, ...]:
        """Линии сети по возрастанию идентификатора."""
        return tuple(self._lines.values())

    @property
    def line_ids(self) -> List[int]:
        return list(self._lines)

    def line(self, line_id: int) -> Line:
        try:
            return self._lines[line_id]
        except KeyError:
            raise UnknownLine(line_id) from None

    def bus(self, bus_id: int) -> Bus:
        try:
            return self._buses[bus_id]
        except KeyError:
            raise UnknownBus(bus_id) from None

    def has_bus(self, bus_id: int) -> bool:
        return bus_id in self._buses or bus_id == self.root

    def energizing_line(self, bus_id: int) -> Optional[int]:
        """Линия, питающая шину; None для корня.

        Raises:
            UnknownBus: Если шины нет в сети.
        """
        if not self.has_bus(bus_id):
            raise UnknownBus(bus_id)
        return self._energizing.get(bus_id)

    def parent_line(self, line_id: int) -> Optional[int]:
        """Линия непосредственно выше по течению; None для головной линии."""
        return self._energizing.get(self.line(line_id).from_bus)

    def descendants(self, line_id: int) -> FrozenSet[int]:
        """Линии, путь которых к корню проходит через данную линию (без неё самой).

        Это множество линий, теряющих питание при отключении данной линии.

        Raises:
            UnknownLine: Если линии нет в сети.
        """
        try:
            return self._descendants[line_id]
        except KeyError:
            raise UnknownLine(line_id) from None

    def path_from_source(self, bus_id: int) -> List[int]:
        """Линии от корня до шины в порядке от источника.

        Raises:
            UnknownBus: Если шины нет в сети.
        """
        path: List[int] = []
        line_id = self.energizing_line(bus_id)
        while line_id is not None:
            path.append(line_id)
            line_id = self._energizing.get(self._lines[line_id].from_bus)
        path.reverse()
        return path


def _check_unique(kind: str, ids: Iterable[int]) -> None:
    duplicates = sorted(item for item, count in Counter(ids).items() if count > 1)
    if duplicates:
        raise DuplicateId(kind, duplicates[0])


def build_network(buses: Iterable[Bus], lines: Iterable[Line], root: int = SOURCE_NODE_ID) -> RadialNetwork:
    """Проверяет описание сети и строит RadialNetwork.

    Args:
        buses: Шины сети.
        lines: Линии сети.
        root: Корневая шина. Служебный источник 0 создаётся автоматически.

    Returns:
        Проверенная неизменяемая радиальная сеть.

    Raises:
        UnknownRoot: Корень не найден среди шин.
        DuplicateId: Повторяющийся идентификатор шины или линии.
        UnknownBus: Линия ссылается на несуществующую шину.
        DuplicateEnergizingLine: Шина питается несколькими линиями.
        CycleDetected: Линии образуют цикл.
        DisconnectedBus: Шины недостижимы из корня.
        LoadedRoot: Корневая шина имеет ненулевую нагрузку.
    """
    bus_list = list(buses)
    line_list = list(lines)

    _check_unique("шины", (bus.id for bus in bus_list))
    _check_unique("линии", (line.id for line in line_list))
    bus_map = {bus.id: bus for bus in bus_list}
    line_map = {line.id: line for line in line_list}

    if root not in bus_map and root != SOURCE_NODE_ID:
        raise UnknownRoot(root)
    if root in bus_map and bus_map[root].load > 0:
        raise LoadedRoot(root, bus_map[root].load)

    nodes = set(bus_map) | {root}
    energized_by: Dict[int, List[int]] = defaultdict(list)
    for line in sorted(line_list, key=lambda item: item.id):
        for endpoint in (line.from_bus, line.to_bus):
            if endpoint not in nodes:
                raise UnknownBus(endpoint)
        energized_by[line.to_bus].append(line.id)

    for bus_id, line_ids in sorted(energized_by.items()):
        if len(line_ids) > 1:
            raise DuplicateEnergizingLine(bus_id, line_ids)

    graph: "nx.DiGraph[int]" = nx.DiGraph()
    graph.add_nodes_from(sorted(nodes))
    for line in line_map.values():
        graph.add_edge(line.from_bus, line.to_bus, line_id=line.id)

    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        pass
    else:
        raise CycleDetected([graph.edges[u, v]["line_id"] for u, v in cycle])

    reachable = nx.descendants(graph, root) | {root}
    orphans = nodes - reachable
    if orphans:
        raise DisconnectedBus(sorted(orphans))

    network = RadialNetwork(bus_map, line_map, root, graph)
    logger.debug(
        "Радиальная сеть построена",
        extra_fields={"buses": len(bus_map), "lines": len(line_map), "root": root},
    )
    return network
