"""
Exhaustive sweeps of the four-verdict classification over a grid of
dominant weights and all pairs of Weyl group elements.

Grid points are independent; with more than one job they run in a process
pool and the rows come back in grid order.
"""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from demkit import settings
from demkit.exceptions import TheoremFalsified
from lie.cartan import parse_cartan_type
from lie.weyl import enumerate_weyl_group, format_word, from_word, reduce_word
from analysis.classify import classify_demazure_product
from analysis.models import ProductVerdict, SweepRow

logger = logging.getLogger(__name__)

TSV_COLUMNS = ('lambda', 'mu', 'w', 'u', 'n_broken_hinges', 'extremal', 'kouno', 'demazure_sum', 'labels')


def _weight_text(wt):
    return ','.join(str(x) for x in wt)


def dominant_weights(c, bound):
    """All dominant weights with every coordinate at most `bound`."""
    return [tuple(wt) for wt in product(range(bound + 1), repeat=c.rank)]


def sweep_grid(c, weights):
    """
    Tasks (type, lam, w letters, mu, u letters) in grid order: lam, mu, then
    every (w, u) in W x W. Tasks are plain tuples so they pickle cheaply.
    """
    words = [reduce_word(w).letters for w in enumerate_weyl_group(c)]
    return [
        (str(c), tuple(lam), w, tuple(mu), u)
        for lam in weights for mu in weights for w in words for u in words
    ]


def _row(lam, mu, w, u, verdict, disagreement=False):
    labels = ';'.join(str(label) for label in verdict.labels) if verdict.labels else '-'
    return SweepRow(
        lam=_weight_text(lam),
        mu=_weight_text(mu),
        w=format_word(w),
        u=format_word(u),
        n_broken_hinges=verdict.n_broken_hinges,
        extremal=verdict.extremal,
        broken_hinge_free=verdict.broken_hinge_free,
        kouno=verdict.kouno,
        demazure_sum=verdict.demazure_sum,
        labels=labels,
        disagreement=disagreement,
    )


def run_task(task):
    label, lam, w_letters, mu, u_letters = task
    c = parse_cartan_type(label)
    w, u = from_word(c, w_letters), from_word(c, u_letters)
    try:
        verdict = classify_demazure_product(lam, w, mu, u)
    except TheoremFalsified as exc:
        if isinstance(exc.record, ProductVerdict):
            return _row(lam, mu, w_letters, u_letters, exc.record, disagreement=True)
        logger.error(f'lam={lam} w={format_word(w_letters)} mu={mu} u={format_word(u_letters)}: {exc}')
        return SweepRow(
            lam=_weight_text(lam),
            mu=_weight_text(mu),
            w=format_word(w_letters),
            u=format_word(u_letters),
            disagreement=True,
        )
    return _row(lam, mu, w_letters, u_letters, verdict)


def run_sweep(c, weights, jobs=None):
    """Classify every grid point; rows are returned in grid order."""
    jobs = settings.SWEEP_JOBS if jobs is None else jobs
    tasks = sweep_grid(c, weights)
    logger.info(f'sweeping {len(tasks)} instances over {len(weights)} weights with {jobs} job(s)')
    if jobs <= 1:
        rows = [run_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    disagreements = sum(row.disagreement for row in rows)
    if disagreements:
        logger.error(f'{disagreements} disagreement(s) in the sweep')
    return rows


def write_tsv(rows, handle):
    writer = csv.writer(handle, delimiter='\t', lineterminator='\n')
    writer.writerow(TSV_COLUMNS)
    for row in rows:
        writer.writerow(row.as_tsv())


def summary(rows):
    disagreements = sum(row.disagreement for row in rows)
    return f'{len(rows)} instances, {disagreements} disagreements'
