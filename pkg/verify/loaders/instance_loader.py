#!/usr/bin/env python3

import argparse
import concurrent.futures
import logging
import random
import sys
import time
from dataclasses import dataclass
from typing import Dict, List, Optional

from core.config import settings
from core.logger import setup_logger
from models.divisor import BaseMorphism, Superdivisor
from verify.processors.representability import (
    morphism_roundtrip,
    random_base,
    random_divisor,
    random_morphism,
    roundtrip_check,
    universal_base,
)
from verify.processors.superdivisor import QuotientPresentation, char_poly, quotient_rank

logger = logging.getLogger(__name__)


@dataclass
class Instance:
    index: int
    divisor: Superdivisor
    morphism: BaseMorphism


class RoundTripBatchLoader:
    """Generates seeded random divisors and morphisms and checks the classification round trip on each."""

    def __init__(self, max_workers: Optional[int] = None, seed: Optional[int] = None,
                 max_degree: Optional[int] = None):
        self.max_workers = max_workers or settings.max_workers
        self.seed = settings.seed if seed is None else seed
        self.max_degree = max_degree or settings.max_degree
        self.failures: List[Dict] = []
        self.stats = {
            'instances': 0,
            'divisor_roundtrips_passed': 0,
            'morphism_roundtrips_passed': 0,
            'charpoly_matches': 0,
            'rank_checks_passed': 0,
            'instances_failed': 0,
            'start_time': None,
        }

    def generate(self, count: int, max_g: int = 3, max_even: int = 3, max_odd: int = 3) -> List[Instance]:
        # generated up front so the instances depend on the seed only
        rng = random.Random(self.seed)
        instances = []
        for index in range(count):
            g = rng.randint(1, max_g)
            base = random_base(rng.randint(0, max_even), rng.randint(0, max_odd))
            divisor = random_divisor(rng, g, base, self.max_degree)
            target = random_base(rng.randint(0, max_even), rng.randint(0, max_odd))
            morphism = random_morphism(rng, universal_base(g), target, self.max_degree)
            instances.append(Instance(index, divisor, morphism))
        return instances

    def _check_single(self, instance: Instance) -> Dict[str, bool]:
        divisor = instance.divisor
        presentation = QuotientPresentation(divisor)
        z = presentation.ambient.var(divisor.coordinate)
        return {
            'divisor': roundtrip_check(divisor),
            'morphism': morphism_roundtrip(instance.morphism),
            'charpoly': char_poly(presentation, z) == divisor.defining_polynomial(),
            'rank': quotient_rank(presentation) == (divisor.g, divisor.g),
        }

    def load_all(self, count: int, max_g: int = 3) -> Dict:
        logger.info(f"Starting round-trip batch: {count} instances, seed {self.seed}, g <= {max_g}")
        self.stats['start_time'] = time.time()
        instances = self.generate(count, max_g)

        with concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_instance = {
                executor.submit(self._check_single, instance): instance
                for instance in instances
            }

            for future in concurrent.futures.as_completed(future_to_instance):
                instance = future_to_instance[future]
                self.stats['instances'] += 1
                try:
                    checks = future.result()
                except Exception as e:
                    logger.error(f"Instance {instance.index} raised: {e}")
                    checks = {'divisor': False, 'morphism': False, 'charpoly': False, 'rank': False}
                self.stats['divisor_roundtrips_passed'] += checks['divisor']
                self.stats['morphism_roundtrips_passed'] += checks['morphism']
                self.stats['charpoly_matches'] += checks['charpoly']
                self.stats['rank_checks_passed'] += checks['rank']
                if not all(checks.values()):
                    self.stats['instances_failed'] += 1
                    self.failures.append({
                        'index': instance.index,
                        'equation': instance.divisor.equation(),
                        'morphism': instance.morphism.describe(),
                        'checks': checks,
                    })
                    logger.warning(f"Instance {instance.index} failed: {checks}")

        self.failures.sort(key=lambda failure: failure['index'])
        self._log_final_results()
        return self.get_stats()

    def get_stats(self) -> Dict:
        stats = self.stats.copy()
        stats.pop('start_time', None)
        return stats

    def _log_final_results(self):
        elapsed = time.time() - self.stats['start_time']
        logger.info(f"Round-trip batch complete: {self.stats['instances']} instances in {elapsed:.1f}s "
                    f"({self.stats['instances_failed']} failed)")


def main():
    parser = argparse.ArgumentParser(description='Random classification round-trip batch')
    parser.add_argument('--count', type=int, default=500, help='Number of random instances')
    parser.add_argument('--max-g', type=int, default=3, help='Largest divisor degree')
    parser.add_argument('--seed', type=int, default=None, help='Random seed')
    parser.add_argument('--max-workers', type=int, default=None, help='Thread pool width')
    args = parser.parse_args()

    setup_logger()
    try:
        loader = RoundTripBatchLoader(max_workers=args.max_workers, seed=args.seed)
        stats = loader.load_all(args.count, args.max_g)
        print(f"Batch completed: {stats}")
    except Exception as e:
        print(f"Batch failed: {e}")
        return 2

    return 1 if stats['instances_failed'] else 0


if __name__ == "__main__":
    sys.exit(main())
