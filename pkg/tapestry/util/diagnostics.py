# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Run diagnostics roll-up.

Points are grouped per tick instead of per time interval, so that a flushed
report is a deterministic function of the run.
"""
# stdlib
from collections import defaultdict
import threading
from typing import Any, Dict, List, Optional, Sequence, Tuple

# 3p
import numpy as np

Row = Tuple[int, str, Optional[Tuple[str, ...]], float]


class Metric(object):
    """
    A base metric: accepts points within one tick and rolls them up on flush.
    """

    def __init__(self, name, tags):
        # type: (str, Optional[Tuple[str, ...]]) -> None
        self.name = name
        self.tags = tags

    def add_point(self, value):
        raise NotImplementedError()

    def flush(self, tick):
        # type: (int) -> List[Row]
        raise NotImplementedError()


class Gauge(Metric):
    """ Last value wins. """

    def __init__(self, name, tags):
        super(Gauge, self).__init__(name, tags)
        self.value = None  # type: Optional[float]

    def add_point(self, value):
        self.value = value

    def flush(self, tick):
        return [(tick, self.name, self.tags, float(self.value))]


class Counter(Metric):
    def __init__(self, name, tags):
        super(Counter, self).__init__(name, tags)
        self.count = 0

    def add_point(self, value):
        self.count += value

    def flush(self, tick):
        return [(tick, self.name, self.tags, float(self.count))]


class Histogram(Metric):
    """ Summary statistics of every point seen in the tick. """

    percentiles = (50, 95)

    def __init__(self, name, tags):
        super(Histogram, self).__init__(name, tags)
        self.values = []  # type: List[float]

    def add_point(self, value):
        self.values.append(float(value))

    def flush(self, tick):
        if not self.values:
            return []
        values = np.asarray(self.values)
        rows = [
            (tick, "%s.min" % self.name, self.tags, float(values.min())),
            (tick, "%s.max" % self.name, self.tags, float(values.max())),
            (tick, "%s.count" % self.name, self.tags, float(values.size)),
            (tick, "%s.avg" % self.name, self.tags, float(values.mean())),
        ]
        for p in self.percentiles:
            rows.append((tick, "%s.%spercentile" % (self.name, p), self.tags, float(np.percentile(values, p))))
        return rows


class RunDiagnostics(object):
    """
    Collects gauges, counters and histograms across the ticks of a run.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._metrics = defaultdict(dict)  # type: Dict[int, Dict[Any, Metric]]

    def _add_point(self, tick, name, value, metric_class, tags=None):
        # type: (int, str, float, type, Optional[Sequence[str]]) -> None
        key = (name, tuple(sorted(tags)) if tags else None)
        with self._lock:
            metrics = self._metrics[tick]
            if key not in metrics:
                metrics[key] = metric_class(name, key[1])
            metrics[key].add_point(value)

    def gauge(self, tick, name, value, tags=None):
        self._add_point(tick, name, value, Gauge, tags)

    def increment(self, tick, name, value=1, tags=None):
        self._add_point(tick, name, value, Counter, tags)

    def histogram(self, tick, name, value, tags=None):
        self._add_point(tick, name, value, Histogram, tags)

    def flush(self):
        # type: () -> List[Row]
        """ Roll up and forget every recorded point, ordered by tick then name. """
        with self._lock:
            rows = []  # type: List[Row]
            for tick in sorted(self._metrics):
                for key in sorted(self._metrics[tick], key=lambda k: (k[0], k[1] or ())):
                    rows.extend(self._metrics[tick][key].flush(tick))
            self._metrics.clear()
        return rows

    def value(self, tick, name, tags=None):
        # type: (int, str, Optional[Sequence[str]]) -> Optional[float]
        """ Current rolled-up value of a gauge or counter, without flushing. """
        key = (name, tuple(sorted(tags)) if tags else None)
        with self._lock:
            metric = self._metrics.get(tick, {}).get(key)
            if metric is None:
                return None
            return metric.flush(tick)[0][3]
