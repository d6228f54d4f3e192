# File path: cctree/api/v1/endpoints/trees.py
from fastapi import APIRouter, HTTPException, status

from cctree.core.exceptions import ParseError, SchemaError
from cctree.dto.request.tree_dto import FlattenRequest, ParseRequest
from cctree.dto.response.tree_dto import FlattenResponse, ParseResponse
from cctree.services.parser_service import ParserService
from cctree.services.tree_service import TreeService

router = APIRouter(prefix="/trees", tags=["Trees"])


@router.post("/parse", response_model=ParseResponse)
def parse_source(request: ParseRequest):
    """Parse Java source into the generic tree JSON."""
    try:
        ast = ParserService.parse_compilation_unit(request.source)
    except ParseError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))

    return ParseResponse(
        tree=TreeService.export_tree(ast),
        node_count=ast.node_count,
        methods=[method.qualified_name for method in ParserService.extract_methods(ast)],
    )


@router.post("/flatten", response_model=FlattenResponse)
def flatten_tree(request: FlattenRequest):
    """Flatten a generic tree document into its token sequence."""
    try:
        ast = TreeService.import_tree(request.tree)
    except SchemaError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))

    tokens = list(TreeService.flatten(ast))
    return FlattenResponse(tokens=tokens, length=len(tokens))
