from typing           import Callable, Any, Dict, List, Optional
from docstring_parser import parse
import inspect
import os

import jinja2
from dotenv import load_dotenv

load_dotenv()

settings_path = os.getenv('VANKAMPEN_SETTINGS') or ''
env_bound     = os.getenv('VANKAMPEN_BOUND') or ''
env_probes    = os.getenv('VANKAMPEN_PROBES') or ''
log_level     = os.getenv('VANKAMPEN_LOG_LEVEL') or ''

PACKAGE_DIR  = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
TEMPLATE_DIR = os.path.join(PACKAGE_DIR, 'templates')
DATA_DIR     = os.path.join(PACKAGE_DIR, 'data')

_environment: Optional[jinja2.Environment] = None


def data_path(name: str) -> str:
    """Absolute path of a file shipped in the package's data directory."""
    return os.path.join(DATA_DIR, name)


def render(template_name: str, **context: Any) -> str:
    """
    Renders one of the package templates.

    Args:
        template_name (str): File name inside the templates directory.
        **context: Values made available to the template.

    Returns:
        str: The rendered text, without a trailing newline.

    Raises:
        FileNotFoundError: If the template does not exist.
    """
    global _environment
    if _environment is None:
        _environment = jinja2.Environment(
            loader=jinja2.FileSystemLoader(TEMPLATE_DIR),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=False,
        )
    try:
        template = _environment.get_template(template_name)
    except jinja2.TemplateNotFound:
        raise FileNotFoundError(f"Template not found: {template_name}")
    return template.render(context).rstrip('\n')


def get_function_details(func: Callable) -> Dict[str, Any]:
    """
    Inspects a function and returns its parameters and docstring.

    Args:
        func (Callable): The function to inspect.

    Returns:
        Dict[str, Any]: 'parameters' (one dict per parameter with name, kind,
        default and annotation) and 'docstring'.
    """
    if not callable(func):
        raise TypeError("The given object is not callable.")

    docstring = inspect.getdoc(func) or "No docstring provided."
    try:
        signature = inspect.signature(func)
    except (ValueError, TypeError):
        return {'parameters': [], 'docstring': docstring}

    parameters_details: List[Dict[str, Any]] = []
    for name, param in signature.parameters.items():
        annotation = param.annotation
        if annotation is inspect.Parameter.empty:
            annotation_name = 'N/A'
        elif isinstance(annotation, str):
            annotation_name = annotation
        else:
            annotation_name = getattr(annotation, '__name__', str(annotation))
        parameters_details.append({
            'name': name,
            'kind': str(param.kind.description),
            'default': param.default if param.default is not inspect.Parameter.empty else 'N/A',
            'annotation': annotation_name,
        })
    return {'parameters': parameters_details, 'docstring': docstring}


def analyze_function(func: Callable) -> Dict[str, Any]:
    """
    Combines the signature with the parsed docstring (Google, reST or NumPy style)
    into a summary and a per-parameter description.
    """
    basic_details = get_function_details(func)
    parsed_docstring = parse(basic_details.get('docstring', ''))

    param_descriptions = {
        param.arg_name: param.description for param in parsed_docstring.params
    }

    summary_parts = []
    if parsed_docstring.short_description:
        summary_parts.append(parsed_docstring.short_description)
    if parsed_docstring.long_description:
        summary_parts.append(parsed_docstring.long_description)
    summary = "\n\n".join(summary_parts)

    enhanced_parameters = []
    for param in basic_details['parameters']:
        enhanced_param = param.copy()
        enhanced_param['description'] = (param_descriptions.get(param['name']) or "").replace('\n', ' ')
        enhanced_param['required'] = (param['default'] == 'N/A')
        enhanced_parameters.append(enhanced_param)

    return {'docstring': summary, 'parameters': enhanced_parameters}
