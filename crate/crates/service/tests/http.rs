use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{header, Request, StatusCode};
use axum::Router;
use bundlepc::http::{router, AppState, Meta};
use bundlepc::GeometryDocument;
use tower::ServiceExt;

const CSV: &str = "a,b,c,d,kind\n\
0,10,5,1,x\n\
1,9,4,2,x\n\
2,8,6,1,x\n\
9,1,0,8,y\n\
8,2,1,9,y\n\
7,0,2,7,y\n\
4,5,9,0,x\n\
3,6,8,3,y\n";

const NUMERIC: &str = "a,b,c,d,kind\n\
0,10,5,1,1\n\
1,9,4,2,1\n\
2,8,6,1,1\n\
9,1,0,8,2\n\
8,2,1,9,2\n\
7,0,2,7,2\n\
4,5,9,0,1\n\
3,6,8,3,2\n";

async fn send(app: &Router, req: Request<Body>) -> (StatusCode, Option<String>, Vec<u8>) {
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let ct = res
        .headers()
        .get(header::CONTENT_TYPE)
        .map(|v| v.to_str().unwrap().to_string());
    let body = to_bytes(res.into_body(), usize::MAX).await.unwrap().to_vec();
    (status, ct, body)
}

async fn get(app: &Router, uri: &str) -> (StatusCode, Option<String>, Vec<u8>) {
    send(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

async fn upload(app: &Router, query: &str, csv: &str) -> (StatusCode, serde_json::Value) {
    let req = Request::post(format!("/api/dataset{query}"))
        .header(header::CONTENT_TYPE, "text/csv")
        .body(Body::from(csv.to_string()))
        .unwrap();
    let (status, _, body) = send(app, req).await;
    (status, serde_json::from_slice(&body).unwrap())
}

async fn loaded(query: &str) -> Router {
    let app = router(AppState::new(None));
    let (status, body) = upload(&app, query, NUMERIC).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    app
}

async fn meta(app: &Router) -> Meta {
    let (status, _, body) = get(app, "/api/meta").await;
    assert_eq!(status, StatusCode::OK);
    serde_json::from_slice(&body).unwrap()
}

async fn geometry(app: &Router, query: &str) -> GeometryDocument {
    let (status, ct, body) = get(app, &format!("/api/geometry{query}")).await;
    assert_eq!(status, StatusCode::OK, "{}", String::from_utf8_lossy(&body));
    assert_eq!(ct.as_deref(), Some("application/json"));
    serde_json::from_slice(&body).unwrap()
}

fn ymap(doc: &GeometryDocument, v: f64) -> f64 {
    doc.layout.plot_top + (1.0 - v) * doc.layout.plot_height
}

fn centroid(meta: &Meta, gap: usize, cluster: usize) -> f64 {
    let members: Vec<&Vec<f64>> = meta
        .values
        .iter()
        .zip(&meta.labels)
        .filter(|(_, &l)| l == cluster)
        .map(|(v, _)| v)
        .collect();
    members.iter().map(|v| (v[gap] + v[gap + 1]) / 2.0).sum::<f64>() / members.len() as f64
}

#[tokio::test]
async fn endpoints_report_missing_dataset() {
    let app = router(AppState::new(None));
    for uri in ["/api/meta", "/api/geometry", "/api/plot.svg", "/api/plot.png"] {
        let (status, ct, body) = get(&app, uri).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
        assert_eq!(ct.as_deref(), Some("application/json"));
        let v: serde_json::Value = serde_json::from_slice(&body).unwrap();
        assert!(v["error"].as_str().unwrap().contains("no dataset"));
    }
    let (status, _, body) = get(&app, "/").await;
    assert_eq!(status, StatusCode::OK);
    assert!(String::from_utf8_lossy(&body).contains("/api/geometry"));
}

#[tokio::test]
async fn upload_then_meta() {
    let app = router(AppState::new(None));
    let (status, body) = upload(&app, "?label_column=kind", NUMERIC).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!((body["n"].as_u64(), body["m"].as_u64(), body["k"].as_u64()), (Some(8), Some(4), Some(2)));
    let m = meta(&app).await;
    assert_eq!(m.snapshot_id, body["snapshot_id"].as_u64().unwrap());
    assert_eq!(m.axis_names, ["a", "b", "c", "d"]);
    assert_eq!((m.axis_min[0], m.axis_max[0]), (0.0, 9.0));
    assert_eq!(m.labels, [0, 0, 0, 1, 1, 1, 0, 1]);
    assert_eq!(m.cluster_sizes, [4, 4]);
    assert_eq!(m.values.len(), 8);
    assert_eq!(m.values[0], [0.0, 1.0, 5.0 / 9.0, 1.0 / 9.0]);

    let (status, body) = upload(&app, "?kmeans=3&seed=2", NUMERIC).await;
    assert_eq!(status, StatusCode::OK);
    let m2 = meta(&app).await;
    assert!(m2.snapshot_id > m.snapshot_id);
    assert_eq!(m2.k, 3);
    assert_eq!(body["m"].as_u64(), Some(5));
}

#[tokio::test]
async fn bad_uploads_are_rejected_and_keep_the_old_snapshot() {
    let app = loaded("").await;
    let before = meta(&app).await;
    for (query, csv) in [
        ("", "a,b\n1,2\n3\n"),
        ("", CSV),
        ("?label_column=nope", NUMERIC),
        ("?kmeans=0", NUMERIC),
        ("?kmeans=99", NUMERIC),
        ("?kmeans=2&label_column=kind", NUMERIC),
    ] {
        let (status, body) = upload(&app, query, csv).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{query}");
        assert!(body["error"].is_string());
    }
    assert_eq!(meta(&app).await, before);
}

#[tokio::test]
async fn straight_geometry_matches_polylines() {
    let app = loaded("?label_column=kind").await;
    let m = meta(&app).await;
    let doc = geometry(&app, "?alpha=0&beta=0").await;
    assert_eq!(doc.snapshot_id, m.snapshot_id);
    assert_eq!(doc.rows.len(), 8);
    for row in &doc.rows {
        let v = &m.values[row.row_id];
        assert_eq!(row.cluster_id, m.labels[row.row_id]);
        assert_eq!(row.segments.len(), 6);
        for (i, s) in row.segments.iter().enumerate() {
            let gap = i / 2;
            let (yl, yr) = (ymap(&doc, v[gap]), ymap(&doc, v[gap + 1]));
            let mid = (yl + yr) / 2.0;
            let (y0, y3) = if i % 2 == 0 { (yl, mid) } else { (mid, yr) };
            assert!((s[1] - y0).abs() < 1e-9 && (s[7] - y3).abs() < 1e-9);
            // Zero-length controls: the segment is the chord.
            assert_eq!((s[2], s[3]), (s[0], s[1]));
            assert_eq!((s[4], s[5]), (s[6], s[7]));
        }
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_requests_use_their_own_parameters() {
    let app = loaded("?label_column=kind").await;
    let m = meta(&app).await;
    let betas: Vec<f64> = (0..16).map(|i| i as f64 / 15.0).collect();
    let handles: Vec<_> = betas
        .iter()
        .map(|&beta| {
            let app = app.clone();
            tokio::spawn(async move { (beta, geometry(&app, &format!("?alpha=0.5&beta={beta}")).await) })
        })
        .collect();
    for h in handles {
        let (beta, doc) = h.await.unwrap();
        assert_eq!(doc.params.beta, beta);
        for row in &doc.rows {
            let v = &m.values[row.row_id];
            for gap in 0..3 {
                let (yl, yr) = (ymap(&doc, v[gap]), ymap(&doc, v[gap + 1]));
                let c = ymap(&doc, centroid(&m, gap, row.cluster_id));
                let expect = (1.0 - beta) * (yl + yr) / 2.0 + beta * c;
                let got = row.segments[2 * gap][7];
                assert!((got - expect).abs() < 1e-9, "beta {beta}: {got} vs {expect}");
                assert_eq!(row.segments[2 * gap][6], doc.layout.bundle_x[gap]);
            }
        }
    }
}

#[tokio::test]
async fn geometry_respects_order_and_redistribute() {
    let app = loaded("?label_column=kind").await;
    let doc = geometry(&app, "?order=3,2,1,0&redistribute=true&beta=1").await;
    assert_eq!(doc.layout.axis_names, ["d", "c", "b", "a"]);
    assert_eq!(doc.params.order, [3, 2, 1, 0]);
    assert!(doc.params.redistribute);
    for gap in 0..3 {
        let mut ys: Vec<f64> = doc.rows.iter().map(|r| r.segments[2 * gap][7]).collect();
        ys.sort_by(f64::total_cmp);
        ys.dedup();
        let slots: Vec<f64> = [0.25, 0.75].iter().map(|&s| ymap(&doc, s)).collect();
        for y in ys {
            assert!(slots.iter().any(|s| (s - y).abs() < 1e-9), "{y}");
        }
    }
}

#[tokio::test]
async fn plots_have_image_content_types() {
    let app = loaded("?kmeans=2&seed=5").await;
    let (status, ct, body) = get(&app, "/api/plot.svg?alpha=0.3").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ct.as_deref(), Some("image/svg+xml"));
    assert!(String::from_utf8(body).unwrap().contains("<path"));

    let (status, ct, body) = get(&app, "/api/plot.png?density=1&gamma=0.7&width=240&height=160").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ct.as_deref(), Some("image/png"));
    let img = image::load_from_memory(&body).unwrap();
    assert_eq!((img.width(), img.height()), (240, 160));

    let (_, _, again) = get(&app, "/api/plot.png?density=1&gamma=0.7&width=240&height=160").await;
    assert_eq!(again, body);
}

#[tokio::test]
async fn bad_parameters_are_400() {
    let app = loaded("").await;
    for query in [
        "?alpha=2",
        "?beta=-0.5",
        "?alpha=abc",
        "?order=0,1",
        "?order=0,0,1,2,3",
        "?width=0",
        "?gamma=0",
        "?redistribute=maybe",
        "?normalization=loud",
    ] {
        let (status, ct, body) = get(&app, &format!("/api/geometry{query}")).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{query}");
        assert_eq!(ct.as_deref(), Some("application/json"));
        let v: serde_json::Value = serde_json::from_slice(&body).unwrap();
        assert!(!v["error"].as_str().unwrap().is_empty());
    }
}

#[tokio::test]
async fn initial_snapshot_is_served() {
    let snapshot = bundlepc::Snapshot::from_csv(0, NUMERIC, &bundlepc::Clustering::Single).unwrap();
    let state = AppState::new(Some(snapshot));
    let app = router(Arc::clone(&state));
    let m = meta(&app).await;
    assert_eq!((m.n, m.m, m.k), (8, 5, 1));
    assert_eq!(m.snapshot_id, state.snapshot().unwrap().id);
}
