package org.example.rssreader;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import okhttp3.OkHttpClient;
import okhttp3.Request;

public class RssReader extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        OkHttpClient client = new OkHttpClient();
        String body = client.newCall(new Request.Builder().url(args.getString(0)).build()).execute().body().string();
        callbackContext.success(parseItems(body));
        return true;
    }
}
