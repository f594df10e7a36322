"""Stereographic export and linking numbers of tangent curves.

Run: python3 demos/03_linking.py
Writes ex5_geometry.csv to the working directory.
"""
from bishop import SpherePoint
from bishop.shell import export_geometry, run_example, run_linking
from bishop.topo import linking_number, project_component, select_pole

rep = run_example("ex5")
pole = select_pole(rep.components)
print("projection pole:", pole)

a, b = (project_component(c, pole) for c in rep.components)
print("linking number:", round(linking_number(a, b), 6))

# the value does not depend on the pole as long as the curves avoid it
print("from (0, -i):", round(linking_number(*(project_component(c, SpherePoint(0, -1j)) for c in rep.components)), 6))

# the two circles of the perturbed pole family are unlinked
print("ex8(0.1):", round(run_linking(run_example("ex8", eps=0.1), 0, 1), 6))

export_geometry(rep, "ex5_geometry.csv", pole)
print("wrote ex5_geometry.csv (component_id, index, x, y, z, gamma, class)")
