"""Generated by singmat.catalog.render_catalog_data; do not edit."""

DERLOG = {
    'E1sy': [
    ],
    'E2sy': [
        ['0', 'a', '2*b'],
        ['-2*a', 'b', '4*c'],
    ],
    'E3sy': [
        ['0', 'a', '0', '2*b', 'c', '0'],
        ['-4*a', 'b', '-2*c', '6*d', '3*e', '0'],
        ['0', '0', 'a', '0', 'b', '2*c'],
        ['0', '0', 'b', '0', 'd', '2*e'],
        ['a', '-b', '2*c', '-3*d', '0', '3*f'],
    ],
    'E2': [
        ['a', '-2*b', '3*c', '0'],
        ['0', '0', 'a', 'b'],
        ['-2*a', 'b', '0', '3*d'],
    ],
    'E23': [
        ['a', '-b', '-c', '2*d', '0', '0'],
        ['-3*a', 'b', '-3*c', '0', '4*e', '0'],
        ['0', '0', '0', 'a', 'b', 'c'],
        ['0', '0', 'b', '0', '0', 'e'],
        ['-a', '-b', '3*c', '0', '0', '4*f'],
    ],
    'E4sk': [
        ['-a', '-b', '-5*c', '4*d', '0', '0'],
        ['0', '0', 'b', '0', 'd', '0'],
        ['a', '-3*b', 'c', '0', '4*e', '0'],
        ['-3*a', 'b', 'c', '0', '0', '4*f'],
        ['a^2', '-a*b', '-a*c', '0', '0', '2*c*d - 2*b*e'],
    ],
    'Qa-completion': [
        ['-2*b', '-5*c', '6*d', '3*e', '0'],
        ['0', '0', '0', 'b', '2*c'],
        ['0', 'b', '0', 'd', '2*e'],
        ['0', 'c', '-d', '0', 'f'],
    ],
    'Qf-completion': [
        ['2*b', 'd', 'e', '0', '0'],
        ['-2*a', 'b', '-3*c', '4*d', '0'],
        ['0', 'a', '0', '2*b', 'c'],
        ['-2*a', '-b', 'c', '0', '2*e'],
    ],
    'quiver': [
        ['d', 'e', 'f', '0', '0', '0'],
        ['a', '-2*b', '-2*c', '3*d', '0', '0'],
        ['-2*a', 'b', '-2*c', '0', '3*e', '0'],
        ['0', '0', '0', 'a', 'b', 'c'],
        ['-2*a', '-2*b', 'c', '0', '0', '3*f'],
    ],
}
