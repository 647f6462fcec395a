"""Prints networkx reference values as C++ initializers for test_reference_values.cpp.

Run by hand when the reference graphs change:
    python3 tests/support/freeze_reference.py
"""

import warnings

import networkx as nx
import numpy as np

GRAPHS = {
    "dag8": (8, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (3, 5), (4, 5), (4, 6), (5, 7), (6, 7), (2, 6),
                 (0, 3), (1, 5)]),
    "dag10": (10, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (3, 6), (4, 7), (5, 7), (5, 8),
                   (6, 8), (7, 9), (8, 9), (1, 5), (4, 8), (4, 5), (7, 8)]),
}


def reachable_mean_distance(d):
    lengths = [l for s, row in nx.all_pairs_shortest_path_length(d) for t, l in row.items() if s != t]
    return sum(lengths) / len(lengths)


def fmt(values):
    return "{" + ", ".join(repr(float(v)) for v in values) + "}"


def main():
    warnings.simplefilter("ignore")
    for name, (n, edges) in GRAPHS.items():
        d = nx.DiGraph()
        d.add_nodes_from(range(n))
        d.add_edges_from(edges)
        u = d.to_undirected()
        nodes = range(n)
        out = {}
        out["betweenness_directed"] = [nx.betweenness_centrality(d)[v] for v in nodes]
        out["betweenness_undirected"] = [nx.betweenness_centrality(u)[v] for v in nodes]
        out["closeness_directed"] = [nx.closeness_centrality(d)[v] for v in nodes]
        out["clustering"] = [nx.clustering(u)[v] for v in nodes]
        out["pagerank"] = [nx.pagerank(d, tol=1e-15, max_iter=10000)[v] for v in nodes]
        out["constraint"] = [nx.constraint(u)[v] for v in nodes]
        out["effective_size"] = [nx.effective_size(u)[v] for v in nodes]
        out["closeness_vitality"] = [nx.closeness_vitality(u)[v] for v in nodes]
        out["current_flow_closeness"] = [nx.current_flow_closeness_centrality(u)[v] for v in nodes]
        out["current_flow_betweenness"] = [nx.current_flow_betweenness_centrality(u)[v] for v in nodes]
        out["second_order"] = [nx.second_order_centrality(u)[v] for v in nodes]
        out["communicability_betweenness"] = [nx.communicability_betweenness_centrality(u)[v] for v in nodes]
        comm = nx.communicability_exp(u)
        out["communicability_row0"] = [comm[0][v] for v in nodes]
        out["communicability_rowlast"] = [comm[n - 1][v] for v in nodes]
        out["modularity_spectrum"] = sorted(np.real(nx.modularity_spectrum(u)))
        scalars = {
            "average_clustering": nx.average_clustering(u),
            "transitivity": nx.transitivity(u),
            "global_efficiency": nx.global_efficiency(u),
            "local_efficiency": nx.local_efficiency(u),
            "average_shortest_path_length_directed": reachable_mean_distance(d),
            "average_node_connectivity_directed": nx.average_node_connectivity(d),
            "edge_connectivity_directed": nx.edge_connectivity(d, 0, n - 1),
            "global_reaching_centrality": nx.global_reaching_centrality(d),
            "s_metric": float(sum(u.degree(a) * u.degree(b) for a, b in u.edges())),
            "degree_assortativity": nx.degree_assortativity_coefficient(d, x="out", y="in"),
            "wiener_index": nx.wiener_index(u),
            "radius": nx.radius(u),
            "diameter": nx.diameter(u),
        }
        census = nx.triadic_census(d)
        print(f"// {name}")
        for key, values in out.items():
            print(f"const std::vector<double> {name}_{key} = {fmt(values)};")
        for key, value in scalars.items():
            print(f"const double {name}_{key} = {float(value)!r};")
        for t in ("003", "012", "021D", "021U", "021C", "030T"):
            print(f"const long {name}_t{t} = {census[t]};")
        print()


if __name__ == "__main__":
    main()
