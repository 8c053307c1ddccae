from collections import Counter
from typing import Mapping, Optional

import matplotlib.pyplot as plt

from .core import VertexSet, format_label
from .pycq_exceptions import PycqError
from .structure import components
from .topology import CrossedCube

_COMPONENT_COLORS = ['#1f77b4', '#2ca02c', '#9467bd', '#ff7f0e', '#17becf', '#8c564b']


def plot_histogram(histogram: Mapping[str, int], title: str = '', display=True,
                   filename=None):
    """ Bar chart of a histogram, e.g. matched lemma conditions or cut profiles.

    :param histogram: mapping from category name to count
    :param str title: optional plot title
    :param bool display: optional, if True, display the plot on the screen
    :param str filename: optional, the filename to save the plot to
    :return: None
    """
    if filename is None and not display:
        raise PycqError("Must specify either a filename or display=True")
    if not histogram:
        raise PycqError("Nothing to plot: the histogram is empty.")

    categories = sorted(histogram, key=str)
    counts = [histogram[c] for c in categories]
    _fig, ax = plt.subplots()
    ax.bar(range(len(categories)), counts, color='tab:blue')
    ax.set_xticks(range(len(categories)))
    ax.set_xticklabels([str(c) for c in categories], rotation=45, ha='right')
    ax.set_ylabel('Count')
    if title:
        ax.set_title(title)
    ax.grid(True, axis='y')
    plt.subplots_adjust(left=0.15, right=0.985, top=0.92, bottom=0.25)
    if filename is not None:
        plt.savefig(filename)
    if display:
        plt.show()
    else:
        plt.close(_fig)
    return


def _graph_elements(cube: CrossedCube, faults: Optional[VertexSet] = None):
    faults = faults if faults is not None else VertexSet(cube.n)
    component_of = {}
    for ix, comp in enumerate(components(cube, faults)):
        for v in comp:
            component_of[v] = ix

    elements = []
    for v in range(cube.vertex_count):
        if v in faults:
            classes = 'faulty'
        else:
            classes = f'component{component_of[v] % len(_COMPONENT_COLORS)}'
        elements.append({
            'data': {
                'id': str(v),
                'label': format_label(v, cube.n),
            },
            'classes': classes,
        })
    for u, v in cube.edges():
        elements.append({
            'data': {
                'id': f'{u}-{v}',
                'source': str(u),
                'target': str(v),
            },
            # Edges touching a faulty vertex are drawn faintly
            'classes': 'cut' if u in faults or v in faults else '',
        })
    return elements


_graph_default_stylesheet = [
    {
        'selector': 'node',
        'style': {
            'label': 'data(label)',
            'font-size': '8px',
        }
    },
    {
        'selector': '.faulty',
        'style': {
            'background-color': '#d62728',
        }
    },
    {
        'selector': '.cut',
        'style': {
            'line-style': 'dashed',
            'opacity': 0.3,
        }
    },
] + [
    {
        'selector': f'.component{ix}',
        'style': {
            'background-color': color,
        }
    }
    for ix, color in enumerate(_COMPONENT_COLORS)
]


def component_sizes(cube: CrossedCube, faults: VertexSet) -> Counter:
    ''' Number of components of CQ_n - F by order, for the viewer's caption. '''
    return Counter(len(c) for c in components(cube, faults))


def graph(cube: CrossedCube, faults: Optional[VertexSet] = None):
    import dash
    import dash_cytoscape as cyto
    from dash import html

    faults = faults if faults is not None else VertexSet(cube.n)
    elements = _graph_elements(cube, faults)
    sizes = component_sizes(cube, faults)
    caption = ', '.join(f'{count} of order {order}' for order, count in sorted(sizes.items()))

    app = dash.Dash(__name__)
    app.layout = html.Div([
        html.P(f"CQ_{cube.n} minus {len(faults)} faulty vertices: "
               f"{caption or 'no vertices left'}"),
        cyto.Cytoscape(
            id='cytoscape',
            layout={'name': 'cose'},
            style={'width': '1200px', 'height': '800px'},
            elements=elements,
            stylesheet=_graph_default_stylesheet,
        )
    ])

    app.run_server(debug=True)
