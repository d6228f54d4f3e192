# File path: cctree/services/demo_service.py
import logging
from typing import List

from cctree.models.enums import RankMode
from cctree.models.statistics import DemoOutcome
from cctree.services.change_tree_service import ChangeTreeService
from cctree.services.corpus_service import CorpusService
from cctree.services.parser_service import ParserService

logger = logging.getLogger(__name__)

HELLO_WORLD_BEFORE = """class HelloWorld {
    public static void main(String[] args) {
        System.out.println("Hello, World!");
    }
}
"""

HELLO_WORLD_AFTER = """class HelloWorld {
    public static void main(String[] args) {
        String msg = "World!";
        System.out.println("Hello, World!");
        System.out.println("Hello, " + msg );
    }
}
"""


class DemoService:
    @staticmethod
    def run(rank_mode: RankMode = RankMode.NONE) -> DemoOutcome:
        """Change trees of the bundled hello-world change, compared with its full ASTs."""
        pre = ParserService.parse_compilation_unit(HELLO_WORLD_BEFORE)
        post = ParserService.parse_compilation_unit(HELLO_WORLD_AFTER)
        pre_tree, post_tree = ChangeTreeService.change_trees(pre, post, rank_mode)
        outcome = DemoOutcome(
            rank_mode=rank_mode,
            sizes=CorpusService.change_size(pre, post, rank_mode),
            pre_tree_empty=pre_tree.is_empty,
            pre_tokens=list(ChangeTreeService.flatten_change_tree(pre_tree)),
            post_tokens=list(ChangeTreeService.flatten_change_tree(post_tree)),
        )
        logger.debug("Demo (%s): %s", rank_mode.value, outcome.sizes)
        return outcome

    @staticmethod
    def run_all() -> List[DemoOutcome]:
        return [DemoService.run(mode) for mode in (RankMode.NONE, RankMode.POSITIONAL)]

    @staticmethod
    def render(outcome: DemoOutcome) -> str:
        sizes = outcome.sizes
        verdict = "empty" if outcome.pre_tree_empty else "not empty"
        return "\n".join([
            f"rank mode: {outcome.rank_mode.value}",
            f"  full AST tokens:     before {sizes.pre_ast_nodes}, after {sizes.post_ast_nodes}, "
            f"total {sizes.ast_nodes}",
            f"  change tree tokens:  before {sizes.pre_change_tree_nodes}, after {sizes.post_change_tree_nodes}, "
            f"total {sizes.change_tree_nodes}",
            f"  reduction:           {sizes.reduction:.1%}",
            f"  before-state change tree is {verdict}",
        ])
