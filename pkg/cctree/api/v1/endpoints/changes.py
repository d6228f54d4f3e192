# File path: cctree/api/v1/endpoints/changes.py
from fastapi import APIRouter, HTTPException, status

from cctree.core.exceptions import MethodNotFoundError, ParseError
from cctree.dto.request.change_dto import DiffRequest, MetricsRequest
from cctree.dto.response.change_dto import DiffResponse, MetricsResponse
from cctree.services.change_tree_service import ChangeTreeService
from cctree.services.corpus_service import CorpusService
from cctree.services.metrics_service import MetricsService
from cctree.services.parser_service import ParserService
from cctree.services.tree_service import TreeService

router = APIRouter(prefix="/changes", tags=["Changes"])


@router.post("/diff", response_model=DiffResponse)
def diff_sources(request: DiffRequest):
    """Code Change Trees of a before/after pair."""
    try:
        diff = ChangeTreeService.diff_sources(
            request.pre_source, request.post_source, request.method, request.rank_mode
        )
    except ParseError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    except MethodNotFoundError as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))

    return DiffResponse(
        rank_mode=request.rank_mode,
        pre_tree=TreeService.export_tree(diff.pre_tree.root) if not diff.pre_tree.is_empty else None,
        post_tree=TreeService.export_tree(diff.post_tree.root) if not diff.post_tree.is_empty else None,
        pre_tokens=list(ChangeTreeService.flatten_change_tree(diff.pre_tree)),
        post_tokens=list(ChangeTreeService.flatten_change_tree(diff.post_tree)),
        sizes=CorpusService.change_size(diff.pre, diff.post, request.rank_mode),
    )


@router.post("/metrics", response_model=MetricsResponse)
def compute_metrics(request: MetricsRequest):
    """Metric set of one method."""
    try:
        if request.method is None:
            method = ParserService.parse_method(request.source)
        else:
            ast = ParserService.parse_compilation_unit(request.source)
            method = ParserService.find_method(ast, request.method)
    except ParseError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    except MethodNotFoundError as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))

    metrics = MetricsService.compute_metrics(method)
    return MetricsResponse(
        method=method.qualified_name, metrics=metrics, vector=metrics.as_vector().tolist()
    )
