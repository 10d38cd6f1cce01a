"""Structured results for the verification suite.

A Check is one verdict with machine-readable evidence; a Report is an
ordered list of checks plus the convention record the run was made
under.  Exit-code policy: any fail gives 1, otherwise any inconclusive
gives 3, otherwise 0.  Usage errors are the caller's problem (2).
"""

import json

VERDICTS = ("pass", "fail", "inconclusive")


class Check:
    def __init__(self, id, anchor, verdict, evidence=None):
        if verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")
        self.id = str(id)
        self.anchor = str(anchor)
        self.verdict = verdict
        self.evidence = evidence if evidence is not None else {}

    def to_json(self):
        return {"id": self.id, "anchor": self.anchor,
                "verdict": self.verdict, "evidence": self.evidence}

    def __repr__(self):
        return f"Check({self.id!r}, {self.verdict!r})"


class Report:
    def __init__(self, checks, conventions):
        self.checks = list(checks)
        self.conventions = dict(conventions)

    def to_json(self):
        return {"checks": [c.to_json() for c in self.checks],
                "conventions": self.conventions}

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True,
                          default=str)

    def exit_code(self):
        verdicts = {c.verdict for c in self.checks}
        if "fail" in verdicts:
            return 1
        if "inconclusive" in verdicts:
            return 3
        return 0

    def counts(self):
        out = {v: 0 for v in VERDICTS}
        for c in self.checks:
            out[c.verdict] += 1
        return out

    def render(self):
        lines = []
        width = max((len(c.id) for c in self.checks), default=4)
        for c in self.checks:
            lines.append(f"{c.verdict.upper():12s} {c.id:{width}s}  {c.anchor}")
            if c.verdict != "pass" and c.evidence:
                blob = json.dumps(c.evidence, default=str)
                if len(blob) > 300:
                    blob = blob[:297] + "..."
                lines.append(f"{'':12s} {'':{width}s}  {blob}")
        n = self.counts()
        lines.append(f"{n['pass']} passed, {n['fail']} failed, "
                     f"{n['inconclusive']} inconclusive")
        return "\n".join(lines)
