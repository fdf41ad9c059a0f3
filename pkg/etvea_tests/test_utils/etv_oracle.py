"""
Brute-force takeover values, recomputed from a genealogy log.

Ancestry is rebuilt by walking dominant parents through the logged events,
with no lineage windows involved, so it checks the incremental archive
independently.
"""

from collections import defaultdict


class EtvOracle(object):
    def __init__(self, beta=0.5, depth=6):
        self.beta = beta
        self.depth = depth
        self.dominant = {}
        self.operator = {}
        self.best = {}

    def chain(self, event_id):
        """event_id followed by up to ``depth`` dominant ancestors."""
        chain = [event_id]
        while len(chain) <= self.depth:
            parent = self.dominant[chain[-1]]
            if parent == 0:
                break
            chain.append(parent)
        return chain

    def observe(self, survivor_ids):
        credit = defaultdict(float)
        links = defaultdict(set)
        for survivor in survivor_ids:
            if survivor == 0:
                continue
            chain = self.chain(survivor)
            for distance, event_id in enumerate(chain):
                credit[event_id] += self.beta**distance
                link = chain[distance - 1] if distance else survivor
                links[event_id].add(link)
        for event_id, value in credit.items():
            if len(links[event_id]) <= 1:
                value = 0.0
            self.best[event_id] = max(self.best.get(event_id, 0.0), value)

    def replay(self, records):
        for record in records:
            if record["kind"] == "event":
                parents = record["parents"]
                event_id = record["event_id"]
                self.dominant[event_id] = parents[record["dominant"]]
                self.operator[event_id] = record["operator"]
            elif record["kind"] == "survivors":
                self.observe(record["event_ids"])
            elif record["kind"] == "adapt":
                self.best = {}
        return self

    def takeover_values(self):
        """{event_id: (operator, best takeover value)} since the last purge"""
        return {
            event_id: (self.operator[event_id], best)
            for event_id, best in self.best.items()
        }
