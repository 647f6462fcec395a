#include <doctest.h>

#include <cmath>
#include <vector>

#include "graphforge/graph.hpp"
#include "graphforge/measures.hpp"

// Values frozen from networkx 3.4 by tests/support/freeze_reference.py.

using namespace graphforge;
namespace m = graphforge::measures;

namespace {

namespace dag8_ref {
std::vector<double> betweenness_directed = {0.0, 0.04365079365079365, 0.031746031746031744, 0.04365079365079365, 0.023809523809523808, 0.07539682539682539, 0.04365079365079365, 0.0};
std::vector<double> betweenness_undirected = {0.023809523809523808, 0.11111111111111109, 0.11111111111111109, 0.11111111111111109, 0.07142857142857142, 0.17460317460317457, 0.1349206349206349, 0.023809523809523808};
std::vector<double> closeness_directed = {0.0, 0.14285714285714285, 0.14285714285714285, 0.42857142857142855, 0.19047619047619047, 0.5102040816326531, 0.38095238095238093, 0.5384615384615384};
std::vector<double> clustering = {0.6666666666666666, 0.5, 0.3333333333333333, 0.5, 0.3333333333333333, 0.3333333333333333, 0.0, 0.0};
std::vector<double> pagerank = {0.05236669553077702, 0.06720392593116409, 0.06720392593116409, 0.1148067067990724, 0.07140780787794035, 0.19934182700527614, 0.11127668239964679, 0.316392428524959};
std::vector<double> constraint = {0.6257716049382714, 0.5086805555555556, 0.482253086419753, 0.5221354166666666, 0.45833333333333326, 0.4144965277777778, 0.3333333333333333, 0.5};
std::vector<double> effective_size = {1.6666666666666667, 2.5, 2.3333333333333335, 2.5, 2.3333333333333335, 3.0, 3.0, 2.0};
std::vector<double> closeness_vitality = {12.0, 9.0, 9.0, 9.0, 10.0, 8.0, 9.0, 13.0};
std::vector<double> current_flow_closeness = {0.19778254649499283, 0.2353191489361702, 0.20390855457227142, 0.23274410774410775, 0.20773854244928627, 0.23836206896551723, 0.2034584253127299, 0.1604759141033082};
std::vector<double> current_flow_betweenness = {0.16447085163179198, 0.28158098682510985, 0.2278481012658228, 0.26125893395332805, 0.19994833376388516, 0.319641780762938, 0.27159218117626793, 0.11624903125807277};
std::vector<double> second_order = {10.62733858956642, 7.830944321680405, 10.159665669201217, 8.020768701351429, 9.87077444100003, 7.606031679026248, 10.193782454188796, 13.717374576801843};
std::vector<double> communicability_betweenness = {0.22830237655339233, 0.40522368881247867, 0.2364042850144387, 0.4025777779712972, 0.25957079252081583, 0.42045025989983686, 0.2168548924449932, 0.107825030418172};
std::vector<double> communicability_row0 = {5.003433632811454, 4.9092923073908015, 3.9295443717543193, 5.338570779459522, 2.6466110933717064, 3.6858801509338948, 1.9983852147940298, 1.2964508894215514};
std::vector<double> communicability_rowlast = {1.296450889421552, 2.1723098356228236, 1.502971521391629, 2.0089840087134743, 2.193261453895343, 2.9592596546177456, 2.3691486183542714, 2.7017669071505277};
std::vector<double> modularity_spectrum = {-2.2359917805057834, -1.7991495254631038, -1.481956703545798, -0.6923446340057876, 6.356987663347844e-17, 0.17336729192845965, 1.131780039348988, 1.5196799276276414};
double average_clustering = 0.3333333333333333;
double transitivity = 0.3870967741935484;
double global_efficiency = 0.7261904761904762;
double local_efficiency = 0.4201388888888889;
double average_shortest_path_length_directed = 1.4782608695652173;
double average_node_connectivity_directed = 0.5892857142857143;
double edge_connectivity_directed = 2.0;
double global_reaching_centrality = 0.673469387755102;
double s_metric = 149.0;
double degree_assortativity = -0.2037037037037037;
double wiener_index = 44.0;
double radius = 2.0;
double diameter = 3.0;
long t003 = 5;
long t012 = 28;
long t021D = 4;
long t021U = 4;
long t021C = 11;
long t030T = 4;
}  // namespace dag8_ref

namespace dag10_ref {
std::vector<double> betweenness_directed = {0.0, 0.026809764309764308, 0.026809764309764308, 0.029713804713804717, 0.0569023569023569, 0.0946127946127946, 0.01515151515151515, 0.03872053872053872, 0.0585016835016835, 0.0};
std::vector<double> betweenness_undirected = {0.05092592592592592, 0.05361952861952862, 0.05361952861952862, 0.10109427609427608, 0.13695286195286197, 0.2818181818181818, 0.0303030303030303, 0.07744107744107744, 0.21422558922558918, 0.0};
std::vector<double> closeness_directed = {0.0, 0.1111111111111111, 0.1111111111111111, 0.1111111111111111, 0.25, 0.462962962962963, 0.14814814814814814, 0.3636363636363636, 0.5470085470085471, 0.42857142857142855};
std::vector<double> clustering = {0.0, 0.3333333333333333, 0.3333333333333333, 0.0, 0.5, 0.3333333333333333, 0.0, 0.6666666666666666, 0.4, 1.0};
std::vector<double> pagerank = {0.03678502980443498, 0.04720745491569156, 0.04720745491569156, 0.04720745491569156, 0.0769113664827726, 0.11876608865872669, 0.056848198143603784, 0.10905217132117846, 0.20372031255474213, 0.25629446828746677};
std::vector<double> constraint = {0.3333333333333333, 0.4223456790123456, 0.4223456790123456, 0.3333333333333333, 0.4430888888888889, 0.3450771604938271, 0.5, 0.5470138888888889, 0.4062555555555556, 0.750625};
std::vector<double> effective_size = {3.0, 2.3333333333333335, 2.3333333333333335, 3.0, 3.0, 4.333333333333333, 2.0, 2.0, 3.4, 1.0};
std::vector<double> closeness_vitality = {19.0, 17.0, 17.0, 14.0, 13.0, 10.0, 18.0, 15.0, 10.0, 21.0};
std::vector<double> current_flow_closeness = {0.14781127003935876, 0.15382886258054845, 0.15382886258054845, 0.15134165519952822, 0.1951273602838677, 0.21245256985167305, 0.12148408221231609, 0.17134987758735812, 0.1911664287044509, 0.11673173875137409};
std::vector<double> current_flow_betweenness = {0.18252872941134027, 0.1399983763597986, 0.1399983763597986, 0.20583698652378624, 0.2788556944669948, 0.35971748660496794, 0.1163879417654381, 0.20433511933755455, 0.33003193159062594, 0.055095524165178295};
std::vector<double> second_order = {18.368925877572735, 17.483107148265145, 17.483107148265145, 17.84598830514669, 11.85556033111613, 9.508065640602753, 22.657340755526246, 15.029731858776193, 12.381301993925486, 23.528055818928316};
std::vector<double> communicability_betweenness = {0.12750914965191634, 0.20185099843587848, 0.20185099843587853, 0.18047150616785473, 0.4609992180963954, 0.6071437322106866, 0.0793753204304204, 0.32971444934037697, 0.45373977806683646, 0.07329672928592901};
std::vector<double> communicability_row0 = {4.1032919886656956, 3.8621740334149464, 3.8621740334149464, 3.267002693177236, 4.396359935300551, 5.1545809840271035, 1.5454402622641004, 2.849589467860838, 3.1361223940250964, 1.111554862648543};
std::vector<double> communicability_rowlast = {1.1115548626485423, 2.1959292023080463, 2.1959292023080463, 1.5938534572698355, 4.609774113672718, 4.863424109575029, 1.7116585440862497, 5.086029033005437, 5.404777045989431, 3.7665985420871415};
std::vector<double> modularity_spectrum = {-2.9608242453278515, -1.579799642755564, -1.4347989487424682, -1.0863135298353837, -0.3304615393856616, 1.9675677104163626e-17, 1.9675677104163626e-17, 0.1946118509616173, 1.257458608464107, 1.8845718910656533};
double average_clustering = 0.35666666666666663;
double transitivity = 0.38181818181818183;
double global_efficiency = 0.6685185185185186;
double local_efficiency = 0.425;
double average_shortest_path_length_directed = 1.6944444444444444;
double average_node_connectivity_directed = 0.6666666666666666;
double edge_connectivity_directed = 2.0;
double global_reaching_centrality = 0.6666666666666666;
double s_metric = 294.0;
double degree_assortativity = -0.2598505751938443;
double wiener_index = 81.0;
double radius = 2.0;
double diameter = 4.0;
long t003 = 24;
long t012 = 55;
long t021D = 4;
long t021U = 8;
long t021C = 22;
long t030T = 7;
}  // namespace dag10_ref

const Dag kDag8(8, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 7}, {6, 7}, {2, 6},
                    {0, 3}, {1, 5}});
const Dag kDag10(10, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {3, 6}, {4, 7}, {5, 7}, {5, 8},
                      {6, 8}, {7, 9}, {8, 9}, {1, 5}, {4, 8}, {4, 5}, {7, 8}});

constexpr double kTol = 1e-9;

void check_vector(const std::vector<double>& got, const std::vector<double>& want, const char* what) {
  INFO(what);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    INFO("node " << i);
    CHECK(std::abs(got[i] - want[i]) < kTol * std::max(1.0, std::abs(want[i])));
  }
}

void check_scalar(double got, double want, const char* what) {
  INFO(what);
  CHECK(std::abs(got - want) < kTol * std::max(1.0, std::abs(want)));
}

#define CHECK_REFERENCE(ns, dag)                                                                            \
  do {                                                                                                      \
    const UndirectedGraph g = underlying_undirected(dag);                                                   \
    const Adjacency adj = g.adjacency();                                                                    \
    const Adjacency succ = (dag).successors();                                                              \
    const Adjacency pred = (dag).predecessors();                                                            \
    const int n = (dag).size();                                                                             \
    check_vector(m::betweenness(succ, true), ns::betweenness_directed, "directed betweenness");            \
    check_vector(m::betweenness(adj, false), ns::betweenness_undirected, "undirected betweenness");        \
    check_vector(m::closeness(pred), ns::closeness_directed, "directed closeness");                         \
    check_vector(m::clustering(adj), ns::clustering, "clustering");                                         \
    check_vector(m::pagerank(succ), ns::pagerank, "pagerank");                                              \
    check_vector(m::constraint(adj), ns::constraint, "constraint");                                         \
    check_vector(m::effective_size(adj), ns::effective_size, "effective size");                             \
    check_vector(m::closeness_vitality(adj), ns::closeness_vitality, "closeness vitality");                 \
    check_vector(m::current_flow_closeness(g), ns::current_flow_closeness, "current-flow closeness");       \
    check_vector(m::current_flow_betweenness(g), ns::current_flow_betweenness, "current-flow betweenness"); \
    check_vector(m::second_order_centrality(g), ns::second_order, "second-order centrality");               \
    check_vector(m::communicability_betweenness(g), ns::communicability_betweenness,                        \
                 "communicability betweenness");                                                            \
    const auto comm = m::communicability(g);                                                                \
    check_vector(comm.front(), ns::communicability_row0, "communicability row 0");                         \
    check_vector(comm.back(), ns::communicability_rowlast, "communicability last row");                    \
    check_vector(m::modularity_spectrum(g), ns::modularity_spectrum, "modularity spectrum");               \
    check_scalar(m::average_clustering(adj), ns::average_clustering, "average clustering");                 \
    check_scalar(m::transitivity(adj), ns::transitivity, "transitivity");                                   \
    check_scalar(m::global_efficiency(adj), ns::global_efficiency, "global efficiency");                    \
    check_scalar(m::local_efficiency(adj), ns::local_efficiency, "local efficiency");                       \
    check_scalar(m::average_shortest_path_length(succ), ns::average_shortest_path_length_directed,          \
                 "directed mean distance");                                                                 \
    check_scalar(m::average_node_connectivity(succ), ns::average_node_connectivity_directed,                \
                 "average node connectivity");                                                              \
    check_scalar(m::local_edge_connectivity(succ, 0, n - 1), ns::edge_connectivity_directed,                \
                 "edge connectivity");                                                                      \
    check_scalar(m::global_reaching_centrality(succ), ns::global_reaching_centrality, "grc");               \
    check_scalar(m::s_metric(g), ns::s_metric, "s metric");                                                 \
    check_scalar(m::degree_assortativity(dag), ns::degree_assortativity, "assortativity");                  \
    check_scalar(m::wiener_index(adj), ns::wiener_index, "wiener index");                                   \
    const auto ecc = m::eccentricities(adj);                                                                \
    CHECK(*std::min_element(ecc.begin(), ecc.end()) == ns::radius);                                         \
    CHECK(*std::max_element(ecc.begin(), ecc.end()) == ns::diameter);                                       \
    const auto census = m::triadic_census(dag);                                                             \
    CHECK(census.t003 == ns::t003);                                                                         \
    CHECK(census.t012 == ns::t012);                                                                         \
    CHECK(census.t021D == ns::t021D);                                                                       \
    CHECK(census.t021U == ns::t021U);                                                                       \
    CHECK(census.t021C == ns::t021C);                                                                       \
    CHECK(census.t030T == ns::t030T);                                                                       \
  } while (false)

}  // namespace

TEST_CASE("eight-node DAG matches networkx") { CHECK_REFERENCE(dag8_ref, kDag8); }

TEST_CASE("ten-node DAG matches networkx") { CHECK_REFERENCE(dag10_ref, kDag10); }
